#ifndef MVMC_CSVIO_HPP_
#define MVMC_CSVIO_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace mvmc {

// Shortest round-trip decimal form; deterministic, so identical runs emit
// byte-identical files.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// One value per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_value_column(const std::filesystem::path& path);

}  // namespace mvmc

#endif  // MVMC_CSVIO_HPP_

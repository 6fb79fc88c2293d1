#ifndef WAVESPEC_CLI_FORMAT_HPP
#define WAVESPEC_CLI_FORMAT_HPP

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace wavespec::cli {

using Json = nlohmann::json;

/// Rounds to 12 significant digits; the stored double prints back as that decimal.
double round12(double v);

/// 12 significant digits, "." separator, independent of the global locale.
std::string format_number(double v);

/// A finite number rounded by round12, or null.
Json number(double v);

/// Re-rounds every number in a document.
Json canonical(const Json& j);

std::string dump(const Json& j);

/// Header plus rows; every row is an object with the header's keys.
void write_csv(std::ostream& os, const std::vector<std::string>& header, const Json& rows);
void write_markdown(std::ostream& os, const std::vector<std::string>& header, const Json& rows);

} // namespace wavespec::cli

#endif

#pragma once

// Canonical file formats and JSON reports.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "smf/congruence.hpp"
#include "smf/genus1.hpp"
#include "smf/siegel.hpp"

namespace smf {

/// Malformed or non-canonical input file.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A path that cannot be read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kExpansionFormat = "smf-expansion/1";
inline constexpr const char* kWittFormat = "smf-witt/1";
inline constexpr const char* kSliceFormat = "smf-jacobi/1";

/// Header fields, then one row [m, n, r, "value"] per nonzero coefficient in (m, n, r) order.
std::string to_json_text(const SiegelExpansion& f);
/// Strict inverse of to_json_text; rejects unsorted, duplicate, zero, out-of-box or non-reduced rows.
SiegelExpansion parse_expansion(const std::string& text);
/// "m,n,r,value" rows, same order and support as the JSON body.
std::string to_csv_text(const SiegelExpansion& f);

std::string to_json_text(const WittPair& w);
std::string to_json_text(const JacobiSlice& phi, const std::optional<PrimeModulus>& p = std::nullopt);

nlohmann::json to_json(const CongruenceReport& rep);
nlohmann::json to_json(const MembershipResult& res, std::uint64_t prime);
nlohmann::json to_json(const FiltrationReport& rep);
nlohmann::json to_json(const Theorem2Report& rep);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace smf

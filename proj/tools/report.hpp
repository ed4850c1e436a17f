#pragma once

// JSON reports: fixed key order, FNV-1a checksum over the body, and a
// byte-exact roundtrip check.

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace gabnc::cli {

using Json = nlohmann::ordered_json;

/// JSON has no infinities; they are written as the strings "inf" / "-inf".
Json number(double x);

std::uint64_t fnv1a64(std::string_view bytes);

/// Stamps "checksum" (computed over the report without it) and returns the
/// serialized text, newline terminated.
std::string finalize(Json& report);

struct RoundtripResult {
  bool parsed = false;
  bool checksum_ok = false;
  bool byte_identical = false;
  std::string message;
  bool ok() const { return parsed && checksum_ok && byte_identical; }
};

RoundtripResult report_roundtrip(const std::string& text);

}  // namespace gabnc::cli

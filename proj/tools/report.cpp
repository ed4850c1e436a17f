#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace gabnc::cli {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string body_checksum(Json report) {
  report.erase("checksum");
  return "fnv1a64:" + hex(fnv1a64(report.dump(2)));
}

}  // namespace

std::string finalize(Json& report) {
  report.erase("checksum");
  report["checksum"] = body_checksum(report);
  return report.dump(2) + "\n";
}

RoundtripResult report_roundtrip(const std::string& text) {
  RoundtripResult r;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    r.message = std::string("parse error: ") + e.what();
    return r;
  }
  if (!doc.is_object() || !doc.contains("checksum") || !doc["checksum"].is_string()) {
    r.message = "parse error: not a report (no checksum field)";
    return r;
  }
  r.parsed = true;
  const std::string stored = doc["checksum"].get<std::string>();
  const std::string computed = body_checksum(doc);
  r.checksum_ok = stored == computed;
  r.byte_identical = doc.dump(2) + "\n" == text;
  if (!r.checksum_ok)
    r.message = "checksum mismatch: stored " + stored + ", computed " + computed;
  else if (!r.byte_identical)
    r.message = "reserialized report differs from the file";
  else
    r.message = "ok";
  return r;
}

}  // namespace gabnc::cli

#pragma once

// Deterministic report serialization: insertion-ordered objects, doubles at
// 17 significant digits, non-finite doubles as null.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vortexq/exact.hpp"

namespace vortexq::cli {

class Json {
 public:
  using Array = std::vector<Json>;
  using Object = std::vector<std::pair<std::string, Json>>;

  Json() = default;
  Json(std::nullptr_t) {}
  Json(bool b) : v_(b) {}
  Json(int x) : v_(static_cast<long>(x)) {}
  Json(long x) : v_(x) {}
  Json(double x) : v_(x) {}
  Json(const char* s) : v_(std::string(s)) {}
  Json(std::string s) : v_(std::move(s)) {}
  Json(Array a) : v_(std::move(a)) {}
  Json(Object o) : v_(std::move(o)) {}

  static Json object() { return Json(Object{}); }
  static Json array() { return Json(Array{}); }
  static Json from(const std::vector<double>& xs);

  /// Replaces an existing key in place, otherwise appends.
  Json& set(const std::string& key, Json value);
  Json& push(Json value);
  const Json* find(std::string_view key) const;

  bool is_object() const noexcept { return std::holds_alternative<Object>(v_); }
  /// The string payload, or nullptr for any other kind.
  const std::string* as_string() const noexcept { return std::get_if<std::string>(&v_); }
  /// Negative indent gives a single line. Always ends with a newline.
  std::string dump(int indent = 2) const;

 private:
  void write(std::string& out, int indent, int depth) const;
  std::variant<std::nullptr_t, bool, long, double, std::string, Array, Object> v_;
};

std::string format_double(double x);
/// Exact rational as "p/q" (or "p" when integral).
Json exact(const Rational& q);
/// Integer as a JSON number when it fits in a long, else as a decimal string.
Json exact(const Integer& z);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Lines emitted before the header, each prefixed by "# ".
  std::vector<std::string> preamble;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  bool empty() const noexcept { return header.empty(); }
  std::string to_csv() const;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace vortexq::cli

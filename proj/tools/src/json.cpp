#include "vortexq/cli/json.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace vortexq::cli {

Json Json::from(const std::vector<double>& xs) {
  Array a;
  a.reserve(xs.size());
  for (double x : xs) a.emplace_back(x);
  return Json(std::move(a));
}

Json& Json::set(const std::string& key, Json value) {
  if (!is_object()) v_ = Object{};
  auto& o = std::get<Object>(v_);
  for (auto& [k, v] : o) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  o.emplace_back(key, std::move(value));
  return *this;
}

Json& Json::push(Json value) {
  if (!std::holds_alternative<Array>(v_)) v_ = Array{};
  std::get<Array>(v_).push_back(std::move(value));
  return *this;
}

const Json* Json::find(std::string_view key) const {
  if (!is_object()) return nullptr;
  for (const auto& [k, v] : std::get<Object>(v_)) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // folds -0
  return buf;
}

Json exact(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return Json(c.get_str());
}

Json exact(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

void Json::write(std::string& out, int indent, int depth) const {
  const auto newline = [&](int d) {
    if (indent < 0) return;  // compact
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  struct Visitor {
    const Json& self;
    std::string& out;
    int indent;
    int depth;
    decltype(newline)& nl;
    void operator()(std::nullptr_t) const { out += "null"; }
    void operator()(bool b) const { out += b ? "true" : "false"; }
    void operator()(long x) const { out += std::to_string(x); }
    void operator()(double x) const { out += format_double(x); }
    void operator()(const std::string& s) const { out += nlohmann::json(s).dump(); }
    void operator()(const Array& a) const {
      if (a.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const Json& e : a) flat = flat && !std::holds_alternative<Array>(e.v_) && !e.is_object();
      out += '[';
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += flat ? ", " : ",";
        if (!flat) nl(depth + 1);
        a[i].write(out, indent, depth + 1);
      }
      if (!flat) nl(depth);
      out += ']';
    }
    void operator()(const Object& o) const {
      if (o.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      for (std::size_t i = 0; i < o.size(); ++i) {
        if (i) out += indent < 0 ? ", " : ",";
        nl(depth + 1);
        out += nlohmann::json(o[i].first).dump();
        out += ": ";
        o[i].second.write(out, indent, depth + 1);
      }
      nl(depth);
      out += '}';
    }
  };
  std::visit(Visitor{*this, out, indent, depth, newline}, v_);
}

std::string Table::to_csv() const {
  std::string out;
  for (const auto& line : preamble) out += "# " + line + "\n";
  const auto row_out = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i];
    }
    out += '\n';
  };
  row_out(header);
  for (const auto& r : rows) row_out(r);
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace vortexq::cli

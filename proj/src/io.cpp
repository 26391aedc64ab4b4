#include "qtsp/io.hpp"

#include <climits>
#include <fstream>
#include <set>
#include <tuple>
#include <utility>

#include "qtsp/arc.hpp"

namespace qtsp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json meta_to_json(const InstanceMeta& meta) {
  ordered_json m = ordered_json::object();
  if (meta.family) m["family"] = *meta.family;
  if (meta.seed) m["seed"] = *meta.seed;
  return m;
}

void read_meta(const json& j, InstanceMeta* meta) {
  if (!meta || !j.contains("meta")) return;
  const json& m = j.at("meta");
  if (!m.is_object()) throw IoError("meta must be an object");
  if (m.contains("family")) {
    if (!m.at("family").is_string()) throw IoError("meta.family must be a string");
    meta->family = m.at("family").get<std::string>();
  }
  if (m.contains("seed")) {
    const json& s = m.at("seed");
    if (!s.is_number_integer() && !s.is_number_unsigned())
      throw IoError("meta.seed must be an integer");
    meta->seed = s.get<unsigned long long>();
  }
}

int read_index(const json& entry, const char* key, size_t pos) {
  if (!entry.contains(key))
    throw IoError("entry " + std::to_string(pos) + " lacks field '" + key + "'");
  const json& v = entry.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw IoError("entry " + std::to_string(pos) + " field '" + key +
                  "' must be an integer");
  long long raw = v.get<long long>();
  if (raw < 1 || raw > 255)
    throw IoError("entry " + std::to_string(pos) + " field '" + key +
                  "' out of range: " + std::to_string(raw));
  return static_cast<int>(raw);
}

Rational read_value(const json& entry, size_t pos) {
  if (!entry.contains("v"))
    throw IoError("entry " + std::to_string(pos) + " lacks field 'v'");
  const json& v = entry.at("v");
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw IoError("entry " + std::to_string(pos) + ": " + e.what());
    }
  }
  if (v.is_number_integer() || v.is_number_unsigned()) {
    if (v.is_number_unsigned() && v.get<unsigned long long>() > LONG_MAX)
      throw IoError("entry " + std::to_string(pos) + ": integer too large");
    return Rational(static_cast<long>(v.get<long long>()));
  }
  if (v.is_number_float())
    throw IoError("entry " + std::to_string(pos) +
                  ": floating-point values are not exact; write \"p/q\"");
  throw IoError("entry " + std::to_string(pos) +
                " field 'v' must be an integer or a rational string");
}

int read_header(const json& j, const char* format) {
  if (!j.is_object()) throw IoError("instance file must be a JSON object");
  if (!j.contains("format") || !j.at("format").is_string() ||
      j.at("format").get<std::string>() != format)
    throw IoError(std::string("expected format tag \"") + format + "\"");
  if (!j.contains("n") ||
      (!j.at("n").is_number_integer() && !j.at("n").is_number_unsigned()))
    throw IoError("field 'n' must be an integer");
  long long n = j.at("n").get<long long>();
  if (n < 3 || n > 255)
    throw IoError("n must lie in [3, 255], got " + std::to_string(n));
  return static_cast<int>(n);
}

const json* entries_of(const json& j) {
  if (!j.contains("entries")) return nullptr;
  if (!j.at("entries").is_array()) throw IoError("entries must be an array");
  return &j.at("entries");
}

void check_arc(int from, int to, int n, size_t pos) {
  if (!valid_arc(Arc{from, to}, n))
    throw IoError("entry " + std::to_string(pos) + ": (" +
                  std::to_string(from) + "," + std::to_string(to) +
                  ") is not an arc for n=" + std::to_string(n));
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void dump_file(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

ordered_json quadratic_to_json(const QuadraticCostMatrix& q,
                               const InstanceMeta* meta) {
  ordered_json j;
  j["format"] = kQuadFormat;
  j["n"] = q.nodes();
  if (meta && (meta->family || meta->seed)) j["meta"] = meta_to_json(*meta);
  ordered_json entries = ordered_json::array();
  for (const QuadEntry& e : q.entries_sorted()) {
    ordered_json cell;
    cell["i"] = e.i;
    cell["j"] = e.j;
    cell["k"] = e.k;
    cell["l"] = e.l;
    cell["v"] = e.v.str();
    entries.push_back(std::move(cell));
  }
  j["entries"] = std::move(entries);
  return j;
}

ordered_json linear_to_json(const LinearCostMatrix& c,
                            const InstanceMeta* meta) {
  ordered_json j;
  j["format"] = kLinFormat;
  j["n"] = c.nodes();
  if (meta && (meta->family || meta->seed)) j["meta"] = meta_to_json(*meta);
  ordered_json entries = ordered_json::array();
  const int n = c.nodes();
  for (int i = 1; i <= n; ++i) {
    for (int j2 = 1; j2 <= n; ++j2) {
      if (i == j2 || c.at(i, j2).is_zero()) continue;
      ordered_json cell;
      cell["i"] = i;
      cell["j"] = j2;
      cell["v"] = c.at(i, j2).str();
      entries.push_back(std::move(cell));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

QuadraticCostMatrix quadratic_from_json(const json& j, InstanceMeta* meta) {
  const int n = read_header(j, kQuadFormat);
  QuadraticCostMatrix q(n);
  read_meta(j, meta);
  const json* entries = entries_of(j);
  if (!entries) return q;
  std::set<std::tuple<int, int, int, int>> seen;
  size_t pos = 0;
  for (const json& entry : *entries) {
    if (!entry.is_object())
      throw IoError("entry " + std::to_string(pos) + " must be an object");
    int i = read_index(entry, "i", pos), jj = read_index(entry, "j", pos);
    int k = read_index(entry, "k", pos), l = read_index(entry, "l", pos);
    check_arc(i, jj, n, pos);
    check_arc(k, l, n, pos);
    if (!seen.insert({i, jj, k, l}).second)
      throw IoError("duplicate cell (" + std::to_string(i) + "," +
                    std::to_string(jj) + ")x(" + std::to_string(k) + "," +
                    std::to_string(l) + ")");
    q.set(i, jj, k, l, read_value(entry, pos));
    ++pos;
  }
  return q;
}

LinearCostMatrix linear_from_json(const json& j, InstanceMeta* meta) {
  const int n = read_header(j, kLinFormat);
  LinearCostMatrix c(n);
  read_meta(j, meta);
  const json* entries = entries_of(j);
  if (!entries) return c;
  std::set<std::pair<int, int>> seen;
  size_t pos = 0;
  for (const json& entry : *entries) {
    if (!entry.is_object())
      throw IoError("entry " + std::to_string(pos) + " must be an object");
    int i = read_index(entry, "i", pos), jj = read_index(entry, "j", pos);
    check_arc(i, jj, n, pos);
    if (!seen.insert({i, jj}).second)
      throw IoError("duplicate cell (" + std::to_string(i) + "," +
                    std::to_string(jj) + ")");
    c.set(i, jj, read_value(entry, pos));
    ++pos;
  }
  return c;
}

void write_quadratic_file(const std::filesystem::path& path,
                          const QuadraticCostMatrix& q,
                          const InstanceMeta* meta) {
  dump_file(path, quadratic_to_json(q, meta));
}

void write_linear_file(const std::filesystem::path& path,
                       const LinearCostMatrix& c, const InstanceMeta* meta) {
  dump_file(path, linear_to_json(c, meta));
}

QuadraticCostMatrix read_quadratic_file(const std::filesystem::path& path,
                                        InstanceMeta* meta) {
  return quadratic_from_json(parse_file(path), meta);
}

LinearCostMatrix read_linear_file(const std::filesystem::path& path,
                                  InstanceMeta* meta) {
  return linear_from_json(parse_file(path), meta);
}

}  // namespace qtsp

#pragma once

// JSON reading and writing of fans and exact numbers.  A fan is
//   {"rank": n, "rays": [[...], ...], "max_cones": [[i, j, ...], ...]}
// with integers written as decimal strings once they exceed 2^53.

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <nlohmann/json.hpp>

#include "toric/fan.hpp"

namespace toric {

using Json = nlohmann::ordered_json;

/// Malformed input; `where` is a JSON-pointer-like location.
struct ParseError : Error {
  std::string where;
  ParseError(std::string where_, const std::string& what)
      : Error(where_ + ": " + what), where(std::move(where_)) {}
};

inline Json to_json(const Integer& x) {
  static const Integer limit = Integer(1) << 53;
  if (abs(x) > limit) return x.get_str();
  return x.get_si();
}

inline Json to_json(Rational q) {
  q.canonicalize();
  if (q.get_den() == 1) return to_json(Integer(q.get_num()));
  return q.get_str();
}

template <class T>
Json to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const Cone& c) { return Json(c.rays); }

inline Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m.row_vectors()) a.push_back(to_json(r));
  return a;
}

inline Json to_json(const Fan& f) {
  Json cones = Json::array();
  for (const auto& c : f.max_cones()) cones.push_back(to_json(c));
  return Json{{"rank", f.rank()}, {"rays", to_json(f.rays())}, {"max_cones", cones}};
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw ParseError(where, "not a decimal integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError(where, "expected an integer");
}

inline std::size_t index_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Fan fan_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("/", "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "rank" && key != "rays" && key != "max_cones") throw ParseError("/" + key, "unknown field");
  }
  for (const char* key : {"rank", "rays", "max_cones"})
    if (!j.contains(key)) throw ParseError(std::string("/") + key, "missing field");
  const std::size_t n = index_from_json(j["rank"], "/rank");
  const Json& jr = j["rays"];
  if (!jr.is_array()) throw ParseError("/rays", "expected an array");
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string at = "/rays/" + std::to_string(i);
    if (!jr[i].is_array()) throw ParseError(at, "expected an array");
    LatticeVector v;
    for (std::size_t k = 0; k < jr[i].size(); ++k) v.push_back(integer_from_json(jr[i][k], at + "/" + std::to_string(k)));
    rays.push_back(std::move(v));
  }
  const Json& jc = j["max_cones"];
  if (!jc.is_array()) throw ParseError("/max_cones", "expected an array");
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string at = "/max_cones/" + std::to_string(i);
    if (!jc[i].is_array()) throw ParseError(at, "expected an array");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < jc[i].size(); ++k) idx.push_back(index_from_json(jc[i][k], at + "/" + std::to_string(k)));
    cones.emplace_back(std::move(idx));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

/// Reads a JSON document from a path, "-" meaning standard input.
inline Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path == "-" ? "<stdin>" : path, "byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

inline Fan read_fan(const std::string& path) { return fan_from_json(read_json(path)); }

inline void write_json(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace toric

#include "varinterp/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "varinterp/error.hpp"

namespace varinterp {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) {
    return std::numeric_limits<double>::infinity();
  }
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& x : j) out.push_back(number(x, what));
  return out;
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  return j.get<int>();
}

VectorNorm norm_from_json(const Json& j) {
  const double p = j.contains("p") ? number(j.at("p"), "norm exponent") : 1.0;
  return VectorNorm::weighted_lp(p, numbers(field(j, "weights"), "norm weights"));
}

}  // namespace

AtomFunction atoms_from_json(const Json& j) {
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw ConfigError("\"atoms\" must be an array of [value, mass] pairs");
  std::vector<Atom> out;
  for (const Json& a : atoms) {
    if (!a.is_array() || a.size() != 2) throw ConfigError("each atom must be a [value, mass] pair");
    out.push_back({number(a[0], "atom value"), number(a[1], "atom mass")});
  }
  try {
    return AtomFunction(std::move(out));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

SampledFunction sampled_from_json(const Json& j) {
  return {grid_from_json(field(j, "grid")), numbers(field(j, "values"), "values")};
}

HaarGrid grid_from_json(const Json& j) {
  return {integer(field(j, "V"), "V"), integer(field(j, "spo"), "spo")};
}

Couple couple_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw ConfigError("couple kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "l1_linf") {
    const bool reversed = j.contains("reversed") && j.at("reversed").get<bool>();
    return reversed ? Couple::l1_linf().reversed() : Couple::l1_linf();
  }
  if (k == "weighted_seq") {
    return Couple::weighted_seq(numbers(field(j, "w0"), "w0"), numbers(field(j, "w1"), "w1"));
  }
  if (k == "finite_generic") {
    return Couple::finite_generic(norm_from_json(field(j, "norm0")), norm_from_json(field(j, "norm1")));
  }
  throw ConfigError("unknown couple kind \"" + k + "\"");
}

Element element_from_json(const Couple& couple, const Json& j) {
  Element e;
  if (couple.kind() == Couple::Kind::l1_linf) {
    e = atoms_from_json(j);
  } else if (j.is_array()) {
    e = numbers(j, "vector");
  } else {
    e = numbers(field(j, "vector"), "vector");
  }
  couple.require_element(e);
  return e;
}

LinearOperatorSpec operator_from_json(const Json& j) {
  LinearOperatorSpec op;
  const Json& m = field(j, "matrix");
  if (!m.is_array()) throw ConfigError("matrix must be an array of rows");
  for (const Json& row : m) op.matrix.push_back(numbers(row, "matrix row"));
  op.m0 = number(field(j, "M0"), "M0");
  op.m1 = number(field(j, "M1"), "M1");
  return op;
}

HaarGrid parse_grid_spec(std::string_view spec, HaarGrid defaults) {
  int v = defaults.octaves();
  int spo = defaults.samples_per_octave();
  while (!spec.empty()) {
    const std::size_t comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("grid spec items must look like key=value");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    int parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ConfigError("grid spec value \"" + std::string(value) + "\" is not an integer");
    }
    if (key == "V") {
      v = parsed;
    } else if (key == "spo") {
      spo = parsed;
    } else {
      throw ConfigError("unknown grid key \"" + std::string(key) + "\"");
    }
  }
  return {v, spo};
}

Json load_json_argument(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (!j.is_discarded()) return j;
  std::ifstream in(text);
  if (!in) throw ConfigError("argument is neither JSON nor a readable file: " + text);
  std::stringstream buffer;
  buffer << in.rdbuf();
  j = Json::parse(buffer.str(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("file does not contain valid JSON: " + text);
  return j;
}

Json to_json(const RearrangementProfile& profile) {
  Json j;
  j["breakpoints"] = std::vector<double>(profile.breakpoints().begin(), profile.breakpoints().end());
  j["levels"] = std::vector<double>(profile.levels().begin(), profile.levels().end());
  j["total_mass"] = profile.total_mass();
  j["integral"] = profile.total_integral();
  return j;
}

Json to_json(const HaarGrid& grid) { return {{"V", grid.octaves()}, {"spo", grid.samples_per_octave()}}; }

}  // namespace varinterp

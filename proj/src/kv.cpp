#include "jcir/kv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jcir/detail/overloaded.hpp"
#include "jcir/error.hpp"

namespace jcir {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

KeyValues parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParameter, std::string("bad JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidParameter, "JSON config must be a flat object");
  KeyValues kv;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      kv[key] = value.get<std::string>();
    } else if (value.is_number()) {
      kv[key] = format_double(value.get<double>());
    } else {
      throw Error(ErrorKind::InvalidParameter, "JSON config value for '" + key + "' is not a scalar");
    }
  }
  return kv;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

KeyValues parse_key_values(const std::string& text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json(body);

  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidParameter, "line " + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

std::string format_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

double get_double(const KeyValues& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorKind::InvalidParameter, "missing key '" + key + "'");
  double value = 0.0;
  const auto& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidParameter, "key '" + key + "' is not a number: '" + s + "'");
  }
  return value;
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
  return kv.count(key) ? get_double(kv, key) : fallback;
}

std::string get_string(const KeyValues& kv, const std::string& key, const std::string& fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

ModelParams params_from_kv(const KeyValues& kv) {
  LevySpec levy = ZeroLevy{};
  const auto kind = get_string(kv, "levy.kind", "zero");
  if (kind == "cpp") {
    const double rate = get_double(kv, "levy.rate");
    const auto jump_kind = get_string(kv, "levy.jump.kind", "exp");
    JumpLaw law;
    if (jump_kind == "exp") {
      law = ExponentialJumps{get_double(kv, "levy.jump.rate")};
    } else if (jump_kind == "const") {
      law = ConstantJumps{get_double(kv, "levy.jump.size")};
    } else if (jump_kind == "gamma") {
      law = GammaJumps{get_double(kv, "levy.jump.shape"), get_double(kv, "levy.jump.rate")};
    } else {
      throw Error(ErrorKind::InvalidParameter, "unknown levy.jump.kind '" + jump_kind + "'");
    }
    levy = CompoundPoisson{rate, law};
  } else if (kind != "zero") {
    throw Error(ErrorKind::InvalidParameter, "unknown levy.kind '" + kind + "'");
  }
  return ModelParams(get_double(kv, "a"), get_double(kv, "b"), get_double(kv, "sigma"), levy,
                     get_double(kv, "y0"));
}

KeyValues params_to_kv(const ModelParams& params) {
  KeyValues kv{{"a", format_double(params.a())},
               {"b", format_double(params.b())},
               {"sigma", format_double(params.sigma())},
               {"y0", format_double(params.y0())}};
  if (const auto* cp = std::get_if<CompoundPoisson>(&params.levy())) {
    kv["levy.kind"] = "cpp";
    kv["levy.rate"] = format_double(cp->rate);
    std::visit(detail::overloaded{
                   [&](const ExponentialJumps& e) {
                     kv["levy.jump.kind"] = "exp";
                     kv["levy.jump.rate"] = format_double(e.rate);
                   },
                   [&](const ConstantJumps& c) {
                     kv["levy.jump.kind"] = "const";
                     kv["levy.jump.size"] = format_double(c.size);
                   },
                   [&](const GammaJumps& g) {
                     kv["levy.jump.kind"] = "gamma";
                     kv["levy.jump.shape"] = format_double(g.shape);
                     kv["levy.jump.rate"] = format_double(g.rate);
                   },
               },
               cp->jumps);
  } else {
    kv["levy.kind"] = "zero";
  }
  return kv;
}

}  // namespace jcir

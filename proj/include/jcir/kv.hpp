#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "jcir/model.hpp"

namespace jcir {

// Flat key-value document shared by model parameters and experiment configs.
//
// Text form is one `key = value` pair per line; blank lines and lines starting
// with '#' are ignored. A document whose first non-blank character is '{' is
// read as a flat JSON object instead (numbers and strings only).
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::filesystem::path& file);
std::string format_key_values(const KeyValues& kv);

double get_double(const KeyValues& kv, const std::string& key);
double get_double(const KeyValues& kv, const std::string& key, double fallback);
std::string get_string(const KeyValues& kv, const std::string& key, const std::string& fallback);

// Model schema: a, b, sigma, y0, levy.kind in {zero, cpp}, levy.rate,
// levy.jump.kind in {exp, const, gamma}, levy.jump.rate (exp, gamma),
// levy.jump.size (const), levy.jump.shape (gamma).
ModelParams params_from_kv(const KeyValues& kv);
KeyValues params_to_kv(const ModelParams& params);

// Shortest decimal that round-trips the double.
std::string format_double(double x);

}  // namespace jcir

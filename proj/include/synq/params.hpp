#pragma once

#include <map>
#include <string>

namespace synq {

// Flat key -> value parameter map. The shipped values live in
// configs/model_defaults.cfg; builtin_defaults() compiles the same values
// into the library so it works without the file, and a test keeps the two
// in sync.
using param_set = std::map<std::string, double>;

param_set builtin_defaults();

// merge "key = value" lines from a file over base (later wins)
void merge_params_file(param_set& base, const std::string& path);

// parse "key=value" (the CLI --param form) and merge
void merge_param_kv(param_set& base, const std::string& kv);

double param(const param_set& ps, const std::string& key);

} // namespace synq

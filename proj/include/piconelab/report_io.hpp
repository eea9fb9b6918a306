#pragma once

#include <string>

#include "piconelab/experiments.hpp"

namespace piconelab {

/// JSON serializations (schema: 1). All writers are deterministic: fixed key
/// order, shortest round-trip number formatting, no timestamps or paths.
std::string to_json(const PiconePointEval& ev);
std::string to_json(const HardyReport& r);
std::string to_json(const SturmReport& r);
std::string to_json(const MonotonicityReport& r);
std::string to_json(const ProportionalityReport& r);
std::string to_json(const MorseReport& r);
std::string to_json(const EigenResult& r, const std::string& g_name, double p,
                    const Domain& domain, int n);

std::string to_csv(const HardyReport& r);
std::string to_csv(const SturmReport& r);
std::string to_csv(const MonotonicityReport& r);
std::string to_csv(const ProportionalityReport& r, const Domain& domain);
std::string to_csv(const MorseReport& r);
/// Eigenfunction as x[,y],value rows.
std::string to_csv(const EigenResult& r);

std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace piconelab

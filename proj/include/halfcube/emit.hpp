#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfcube/fourier.hpp"
#include "halfcube/quadrature.hpp"

namespace halfcube::io {

// 17 significant digits: every double round-trips exactly.
std::string format_float(double x);

enum class Format { Csv, Jsonl };
Format parse_format(const std::string& name);

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string timestamp;  // RFC 3339 UTC, filled by now_rfc3339()
    int d = 2;
    std::vector<long long> M_list;
    double alpha = 0.5;
    std::string method;
    int nodes = 0;
    std::uint64_t seed = 0;
    bool use_symmetry = true;
    int r_count = 0;
    std::string measure_convention = "unnormalized-surface-measure";
    std::string command_line;
};

std::string now_rfc3339();
void write_manifest(const std::string& data_path, const RunManifest& manifest);

inline constexpr const char* kScanHeader =
    "d,M,alpha,r,integral_abs_D,quad_error,method,nodes,seed,r_count";
inline constexpr const char* kFitHeader =
    "d,alpha,M,N,sup_value,sup_r,ratio_logpow,ratio_poly,slope_loglog";

void write_scan(const std::string& path, const quad::DiscrepancyProfile& profile, Format format);
void write_fit(const std::string& path, const quad::FitReport& report, Format format);
void write_decay(const std::string& path, const std::vector<fourier::DecayRow>& table,
                 Format format);
void write_logsum(const std::string& path, const std::vector<fourier::LogSumRow>& table,
                  Format format);

// Rebuild profiles from scan files, grouping rows by (d, M, alpha).
std::vector<quad::DiscrepancyProfile> read_scan_files(const std::vector<std::string>& paths);

// Static SVG plots; an empty profile or report is an error and no file is
// written.
void plot_profile(const std::string& path, const quad::DiscrepancyProfile& profile);
void plot_fit(const std::string& path, const quad::FitReport& report);

}  // namespace halfcube::io

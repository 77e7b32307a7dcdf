// Copyright 2026 The coolsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COOLSIM_EXPERIMENTS_HPP
#define COOLSIM_EXPERIMENTS_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coolsim/channels.hpp"
#include "coolsim/densitysim.hpp"

namespace coolsim {

enum class ExperimentKind { kTsacScan, kDcGrid, kDynamics, kTwodesign, kCoolingLimit, kEtaTable };

std::string_view experiment_kind_name(ExperimentKind kind) noexcept;

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kTsacScan;
    std::string name;
    std::vector<double> p;
    std::vector<int> n;
    double epsilon = 0.0;
    double t_initial = 0.163;  // K
    double frequency = 1e10;   // Hz
    std::vector<int> repetitions;
    int rounds = 0;
    NoiseKind model = NoiseKind::kTimekeeping;
    ErrorOrientation orientation = ErrorOrientation::kReversed;
    int max_rounds = 10000;
    double conv_tol = 1e-12;
    /// Largest n simulated at gate level in tsac_scan; larger n get model rows only.
    int physical_max_n = 6;
    int threads = 0;
};

/// Parses the single [experiment] table. Throws ConfigError naming the line and field.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::filesystem::path &path);

struct ResultRecord {
    std::string experiment;
    std::string provenance;  // gda, physical or ideal
    int n = 0;
    double p = 0.0;
    double epsilon = 0.0;
    double eta = 0.0;
    std::string metric;
    double value = 0.0;
    /// Round or repetition count folded into the metric name; orders rows numerically.
    int index = -1;
};

/// Records sorted by grid key; identical configs give identical output.
std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg);

inline constexpr std::string_view kCsvHeader = "experiment,provenance,n,p,epsilon,eta,metric,value";

/// Header plus one line per record, 17 significant digits, LF endings.
std::string to_csv(std::span<const ResultRecord> records);
std::string to_json(const ExperimentConfig &cfg, std::span<const ResultRecord> records);

/// Writes <dir>/<name>.csv and <dir>/<name>.json through temporaries renamed into place.
void write_outputs(const ExperimentConfig &cfg, std::span<const ResultRecord> records, const std::filesystem::path &dir);

}  // namespace coolsim

#endif

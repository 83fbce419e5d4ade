// Copyright 2026 The qmlkit Authors
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

#include <cmath>
#include <memory>

#include "cli_internal.h"
#include "qmlkit/qsub.h"

namespace qmlkit::cli {

namespace {

struct SwapOptions {
    std::vector<double> u;
    std::vector<double> v;
    uint64_t shots = 10000;
    size_t repetitions = 1;
};

struct QmaCliOptions {
    std::vector<double> table;
    size_t size = 256;
    size_t trials = 1;
    size_t max_rounds = 0;
    size_t stall_rounds = 5;
};

Readout readout_for(uint64_t shots) {
    return shots == 0 ? Readout::exact() : Readout::shots(shots);
}

Json estimate_json(const FidelityEstimate &e) {
    return Json{{"p0_hat", e.p0_hat},
                {"fidelity_raw", e.fidelity_raw},
                {"fidelity_hat", e.fidelity_hat},
                {"shots_used", e.shots_used},
                {"std_error", e.std_error}};
}

}  // namespace

void add_qsub_commands(CLI::App &app, Registry &registry) {
    {
        Command &cmd = add_command(app, registry, "swap-test",
                                   "Estimate the fidelity and distance of two amplitude-encoded vectors");
        auto o = std::make_shared<SwapOptions>();
        cmd.option("--u", o->u, "First vector")->required()->delimiter(',');
        cmd.option("--v", o->v, "Second vector")->required()->delimiter(',');
        cmd.option("--shots", o->shots, "Shots per estimate; 0 reads probabilities exactly");
        cmd.option("--repetitions", o->repetitions, "Independent estimates")->check(CLI::Range(1, 1000000));
        cmd.run = [o](Context &ctx) {
            if (o->u.size() != o->v.size()) {
                throw std::invalid_argument("--u and --v must have the same length");
            }
            StateVector a = amplitude_encode(o->u), b = amplitude_encode(o->v);
            double exact = std::norm(inner_product(a, b));
            double dist = 0;
            for (size_t i = 0; i < o->u.size(); ++i) {
                dist += (o->u[i] - o->v[i]) * (o->u[i] - o->v[i]);
            }
            Rng root(ctx.seed());
            Json runs = Json::array();
            for (size_t r = 0; r < o->repetitions; ++r) {
                Rng rng = root.child(r);
                Json run = estimate_json(swap_test(a, b, readout_for(o->shots), rng));
                run["distance_estimate"] = quantum_distance(o->u, o->v, readout_for(o->shots), rng);
                runs.push_back(run);
            }
            return Json{{"fidelity_exact", exact}, {"distance_exact", dist}, {"estimates", runs}};
        };
    }
    {
        Command &cmd = add_command(app, registry, "qma", "Find table minima with the quantum minimization algorithm");
        auto o = std::make_shared<QmaCliOptions>();
        cmd.option("--table", o->table, "Objective values (length 2^n); random tables when omitted")
            ->delimiter(',');
        cmd.option("--size", o->size, "Length of random uniform tables");
        cmd.option("--trials", o->trials, "Independent runs")->check(CLI::Range(1, 100000000));
        cmd.option("--max-rounds", o->max_rounds, "Round budget; 0 selects 10*ceil(sqrt(N))");
        cmd.option("--stall-rounds", o->stall_rounds, "Non-improving rounds at full Grover count before stopping");
        cmd.run = [o](Context &ctx) {
            QmaOptions options;
            options.max_rounds = o->max_rounds;
            options.stall_rounds = o->stall_rounds;
            Rng root(ctx.seed());
            size_t successes = 0;
            double total_calls = 0;
            std::vector<std::vector<std::string>> rows;
            size_t n = o->table.empty() ? o->size : o->table.size();
            for (size_t t = 0; t < o->trials; ++t) {
                std::vector<double> table = o->table;
                if (table.empty()) {
                    Rng table_rng = root.child(2 * t);
                    table.resize(o->size);
                    for (double &x : table) {
                        x = table_rng.uniform();
                    }
                }
                Rng rng = root.child(2 * t + 1);
                QmaResult r = qma_minimize(table, rng, options);
                double best = *std::min_element(table.begin(), table.end());
                bool ok = table[r.argmin_index] == best;
                successes += ok;
                total_calls += static_cast<double>(r.oracle_calls);
                rows.push_back({cell(t), cell(static_cast<uint64_t>(r.argmin_index)), cell(r.min_value), cell(best),
                                cell(static_cast<int>(ok)), cell(r.oracle_calls), cell(static_cast<uint64_t>(r.rounds))});
            }
            write_table(ctx.artifact("qma_trials.csv"),
                        {"trial", "argmin", "min_value", "true_min", "correct", "oracle_calls", "rounds"}, rows);
            constexpr double kCalibration = 25;
            double mean_calls = total_calls / static_cast<double>(o->trials);
            return Json{{"table_size", n},
                        {"trials", o->trials},
                        {"success_rate", static_cast<double>(successes) / static_cast<double>(o->trials)},
                        {"mean_oracle_calls", mean_calls},
                        {"call_budget_constant", kCalibration},
                        {"call_budget", kCalibration * std::sqrt(static_cast<double>(n))},
                        {"within_budget", mean_calls <= kCalibration * std::sqrt(static_cast<double>(n))}};
        };
    }
}

}  // namespace qmlkit::cli

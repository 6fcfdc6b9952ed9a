#pragma once

#include "reports.hpp"

namespace forcelab::cli {

// Runs the steps of an experiment config in order. References to earlier
// steps ("@label") are checked before anything runs. The returned outcome
// carries one artifact set per step, prefixed with its label, plus
// experiment.json.
Outcome run_experiment(const Json& config, const Limits& limits);

}  // namespace forcelab::cli

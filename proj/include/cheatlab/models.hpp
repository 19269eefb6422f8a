#pragma once

#include <string>
#include <vector>

#include "cheatlab/model.hpp"
#include "cheatlab/solve.hpp"

namespace cheatlab {

enum class Task { BC, WCF, OT, XOT, DR3 };
enum class Party { Alice, Bob };

std::string to_string(Task t);
std::string to_string(Party p);

// Stable listing of every model the CLI and reproduction suite know about.
const std::vector<std::string>& model_ids();
bool is_model(const std::string& id);

struct ModelDescriptor {
    std::string name;
    std::string protocol;  // catalog protocol id
    std::vector<std::pair<std::string, long>> variables;  // name, matrix side (pre-reduction)
    int constraints = 0;
};

ModelDescriptor describe_model(const std::string& id);

// Cheating SDP for one standalone task. (XOT, Bob) and (DR3, Bob) are rejected.
SdpProblem build_base(Task task, Party party);

// Two-stage stochastic program for cheating Alice across a stochastic switch;
// scenarios are the base problems, bound through the shared first message.
// Probabilities default to uniform.
TwoStageSdp build_switch_alice(const std::vector<Task>& tasks,
                               std::vector<double> probs = {});

// Cheating Bob against a stochastic switch is a single SDP: his task
// selection is part of the optimized strategy.
SdpProblem build_switch_bob(const std::vector<Task>& tasks);

// Rabin OT switch protocols, variant 1 (guess the outcome) and 2 (force bot).
SdpProblem build_rot_switch(int variant, Party party);

// XOT / die-rolling switch for cheating Alice.
TwoStageSdp build_xot_dr_switch_alice();

// Strong-coin-flip switch, cheating Bob forcing outcome 1.
SdpProblem build_scf_switch_bob();

// Any of the 22 cataloged models by CLI name (two-stage ones composed).
SdpProblem build_model(const std::string& id);

// Solves with the model's first-message expression pinned to a candidate
// density operator. The candidate may carry 4-decimal rounding; its trace is
// normalized when within 1e-3 of one.
ModelSolve restrict_and_solve(const SdpProblem& model, const TensorOperator& first_message,
                              const PipelineOptions& opts = {});

}  // namespace cheatlab

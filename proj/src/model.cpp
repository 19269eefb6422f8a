#include "cheatlab/model.hpp"

#include <algorithm>
#include <cmath>

namespace cheatlab {

int SdpProblem::declare_variable(const std::string& name, const RegisterSpace& space) {
    if (name.empty()) throw DomainError("variable name must be non-empty");
    if (has_variable(name)) throw DomainError("variable '" + name + "' already declared");
    vars_.push_back({name, space});
    return static_cast<int>(vars_.size()) - 1;
}

bool SdpProblem::has_variable(const std::string& name) const {
    return std::any_of(vars_.begin(), vars_.end(),
                       [&](const VariableDecl& v) { return v.name == name; });
}

const VariableDecl& SdpProblem::variable(const std::string& name) const {
    for (const auto& v : vars_)
        if (v.name == name) return v;
    throw DomainError("unknown variable '" + name + "' in model " + id_);
}

void SdpProblem::add_objective(const std::string& var, const TensorOperator& coeff) {
    const auto& v = variable(var);
    if (!coeff.space().same_dims(v.space))
        throw DimensionError("objective coefficient space mismatch for '" + var + "'");
    if (!is_hermitian(coeff)) throw DomainError("objective coefficient must be Hermitian");
    objective_.push_back({var, coeff});
}

void SdpProblem::check_term(const LinearTerm& t) const {
    const auto& v = variable(t.var);
    if (!t.map.domain().same_dims(v.space))
        throw DimensionError("map domain " + t.map.domain().to_string() +
                             " does not match variable '" + t.var + "' on " +
                             v.space.to_string());
}

int SdpProblem::add_equality(std::vector<LinearTerm> lhs, TensorOperator rhs, std::string note) {
    if (lhs.empty()) throw DomainError("equality with empty left-hand side");
    for (const auto& t : lhs) {
        check_term(t);
        if (!t.map.codomain().same_dims(rhs.space()))
            throw DimensionError("constraint term lands on " + t.map.codomain().to_string() +
                                 ", expected " + rhs.space().to_string());
    }
    if (!is_hermitian(rhs)) throw DomainError("constraint constant must be Hermitian");
    constraints_.push_back({std::move(lhs), std::move(rhs), std::move(note)});
    return static_cast<int>(constraints_.size()) - 1;
}

int SdpProblem::add_equality(std::vector<LinearTerm> lhs, std::vector<LinearTerm> rhs,
                             std::string note) {
    if (lhs.empty() || rhs.empty()) throw DomainError("equality with empty side");
    TensorOperator zero = TensorOperator::zero(lhs.front().map.codomain());
    for (auto& t : rhs) lhs.push_back({LinearMap::scale(-1.0, t.map), t.var});
    return add_equality(std::move(lhs), std::move(zero), std::move(note));
}

int SdpProblem::add_unit_trace(const std::string& var) {
    const auto& v = variable(var);
    std::vector<std::string> all;
    for (const auto& r : v.space.registers()) all.push_back(r.label);
    TensorOperator one(RegisterSpace{}, Matrix::Ones(1, 1));
    return add_equality({{LinearMap::trace_out(v.space, all), var}}, one,
                        "unit trace " + var);
}

void SdpProblem::set_first_message(LinearTerm expr) {
    check_term(expr);
    first_message_ = FirstMessage{std::move(expr)};
}

namespace {

nlohmann::json operator_json(const TensorOperator& op) {
    nlohmann::json space = nlohmann::json::array();
    for (const auto& r : op.space().registers()) space.push_back({r.label, r.dim});
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < op.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < op.dim(); ++c)
            row.push_back({op.entries()(r, c).real(), op.entries()(r, c).imag()});
        rows.push_back(row);
    }
    return {{"space", space}, {"entries", rows}};
}

}  // namespace

nlohmann::json SdpProblem::to_json() const {
    nlohmann::json j;
    j["model"] = id_;
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : vars_) {
        nlohmann::json regs = nlohmann::json::array();
        for (const auto& r : v.space.registers()) regs.push_back({r.label, r.dim});
        vars.push_back({{"name", v.name}, {"space", regs}, {"dim", v.space.total_dim()}});
    }
    j["variables"] = vars;
    nlohmann::json obj = nlohmann::json::array();
    for (const auto& t : objective_)
        obj.push_back({{"var", t.var}, {"coeff", operator_json(t.coeff)}});
    j["objective"] = obj;
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : constraints_) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : c.lhs) terms.push_back({{"var", t.var}, {"map", t.map.to_json()}});
        cons.push_back({{"terms", terms}, {"rhs", operator_json(c.rhs)}, {"note", c.note}});
    }
    j["constraints"] = cons;
    return j;
}

SdpProblem compose_two_stage(const TwoStageSdp& spec) {
    if (spec.scenarios.empty()) throw DomainError("two-stage program with no scenarios");
    double total = 0.0;
    for (const auto& s : spec.scenarios) {
        if (s.probability < 0.0) throw DomainError("negative scenario probability");
        total += s.probability;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("scenario probabilities sum to " + std::to_string(total));

    SdpProblem out(spec.id);
    out.declare_variable(spec.stage1_name, spec.stage1_space);

    for (size_t si = 0; si < spec.scenarios.size(); ++si) {
        const Scenario& sc = spec.scenarios[si];
        const std::string prefix = sc.problem.id().empty()
                                       ? ("s" + std::to_string(si) + ".")
                                       : (sc.problem.id() + ".");
        if (!sc.binding.map.codomain().same_dims(spec.stage1_space))
            throw DimensionError("scenario binding lands on " +
                                 sc.binding.map.codomain().to_string() + ", expected stage-1 " +
                                 spec.stage1_space.to_string());

        // A binding of a whole scenario variable merges it with the stage-1 variable.
        std::string merged;
        if (sc.binding.map.is_identity() &&
            sc.problem.variable(sc.binding.var).space.same_dims(spec.stage1_space))
            merged = sc.binding.var;
        auto mapped = [&](const std::string& name) {
            return name == merged ? spec.stage1_name : prefix + name;
        };

        for (const auto& v : sc.problem.variables())
            if (v.name != merged) out.declare_variable(mapped(v.name), v.space);
        for (const auto& t : sc.problem.objective())
            out.add_objective(mapped(t.var), t.coeff * sc.probability);
        for (const auto& c : sc.problem.constraints()) {
            std::vector<LinearTerm> lhs;
            for (const auto& t : c.lhs) lhs.push_back({t.map, mapped(t.var)});
            out.add_equality(std::move(lhs), c.rhs, prefix + c.note);
        }
        if (merged.empty())
            out.add_equality({{sc.binding.map, mapped(sc.binding.var)}},
                             {{LinearMap::identity(spec.stage1_space), spec.stage1_name}},
                             prefix + "binding");
    }
    out.add_unit_trace(spec.stage1_name);
    out.set_first_message({LinearMap::identity(spec.stage1_space), spec.stage1_name});
    return out;
}

long svec_dim(long side) { return side * (side + 1) / 2; }

RealVector svec(const RealMatrix& s) {
    const long n = s.rows();
    RealVector v(svec_dim(n));
    const double rt2 = std::sqrt(2.0);
    long k = 0;
    for (long r = 0; r < n; ++r) {
        v(k++) = s(r, r);
        for (long c = r + 1; c < n; ++c) v(k++) = rt2 * 0.5 * (s(r, c) + s(c, r));
    }
    return v;
}

RealMatrix unsvec(const RealVector& v, long side) {
    RealMatrix s(side, side);
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    long k = 0;
    for (long r = 0; r < side; ++r) {
        s(r, r) = v(k++);
        for (long c = r + 1; c < side; ++c) {
            s(r, c) = s(c, r) = inv_rt2 * v(k++);
        }
    }
    return s;
}

long CanonicalProblem::block_index(const std::string& var) const {
    for (size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].var == var) return static_cast<long>(i);
    throw DomainError("unknown block '" + var + "'");
}

TensorOperator CanonicalProblem::recover(long block, const RealMatrix& s) const {
    const CanonicalBlock& blk = blocks.at(block);
    if (!blk.embedded) {
        return TensorOperator(blk.space, s.cast<Complex>());
    }
    const long n = blk.space.total_dim();
    Matrix h(n, n);
    h.real() = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
    h.imag() = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
    return TensorOperator(blk.space, std::move(h));
}

}  // namespace cheatlab

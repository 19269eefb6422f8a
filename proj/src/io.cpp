#include "cheatlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cheatlab {

nlohmann::json operator_to_json(const TensorOperator& op) {
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

namespace {

Complex entry_from_json(const nlohmann::json& e) {
    if (e.is_number()) return Complex(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Complex(e[0].get<double>(), e[1].get<double>());
    throw DomainError("matrix entry must be a number or an [re, im] pair");
}

Matrix entries_from_json(const nlohmann::json& rows) {
    if (!rows.is_array() || rows.empty()) throw DomainError("entries must be a non-empty array");
    const long n = static_cast<long>(rows.size());
    Matrix m(n, n);
    for (long r = 0; r < n; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || static_cast<long>(row.size()) != n)
            throw DomainError("entries must form a square matrix");
        for (long c = 0; c < n; ++c) m(r, c) = entry_from_json(row[c]);
    }
    return m;
}

}  // namespace

TensorOperator operator_from_json(const nlohmann::json& j) {
    if (!j.contains("space") || !j.contains("entries"))
        throw DomainError("operator JSON needs 'space' and 'entries'");
    std::vector<Register> regs;
    for (const auto& r : j["space"])
        regs.push_back({r[0].get<std::string>(), r[1].get<int>()});
    return TensorOperator(RegisterSpace(std::move(regs)), entries_from_json(j["entries"]));
}

TensorOperator candidate_from_json(const nlohmann::json& j) {
    if (j.is_object()) return operator_from_json(j);
    const Matrix m = entries_from_json(j);
    return TensorOperator(RegisterSpace::single("M", static_cast<int>(m.rows())), m);
}

nlohmann::json result_to_json(const std::string& model, const std::string& backend,
                              const SolveResult& result) {
    return {{"model", model},
            {"backend", backend},
            {"status", to_string(result.status)},
            {"value", result.value},
            {"gap", result.gap},
            {"primal_residual", result.primal_residual},
            {"dual_residual", result.dual_residual},
            {"iterations", result.iterations},
            {"wall_ms", result.wall_ms}};
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string sdpa_export(const CanonicalProblem& p) {
    std::ostringstream os;
    os << "* model " << p.id << "\n";
    os << "* objective-scale " << fmt_double(p.objective_scale) << "\n";
    os << "* blocks";
    for (const auto& b : p.blocks) os << " " << b.var << (b.embedded ? "(embedded)" : "");
    os << "\n";
    os << p.A.rows() << " = mDIM\n";
    os << p.blocks.size() << " = nBLOCK\n";
    for (size_t i = 0; i < p.blocks.size(); ++i) os << (i ? " " : "") << p.blocks[i].side;
    os << " = bLOCKsTRUCT\n";
    for (long i = 0; i < p.b.size(); ++i) os << (i ? " " : "") << fmt_double(p.b(i));
    os << "\n";

    // Off-diagonals are stored sqrt(2)-scaled; dividing on the way out and
    // multiplying on the way in keeps every catalog value bit-stable.
    const double rt2 = std::sqrt(2.0);
    auto emit_block = [&](long mat, size_t blk, const RealVector& sv) {
        const long side = p.blocks[blk].side;
        long k = 0;
        for (long r = 0; r < side; ++r) {
            if (sv(k) != 0.0)
                os << mat << " " << blk + 1 << " " << r + 1 << " " << r + 1 << " "
                   << fmt_double(sv(k)) << "\n";
            ++k;
            for (long c = r + 1; c < side; ++c, ++k)
                if (sv(k) != 0.0)
                    os << mat << " " << blk + 1 << " " << r + 1 << " " << c + 1 << " "
                       << fmt_double(sv(k) / rt2) << "\n";
        }
    };
    for (size_t blk = 0; blk < p.blocks.size(); ++blk) emit_block(0, blk, svec(p.C[blk]));
    for (long i = 0; i < p.A.rows(); ++i) {
        RealVector row = RealVector::Zero(p.total_svec_dim);
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(p.A, i); it; ++it)
            row(it.col()) = it.value();
        for (size_t blk = 0; blk < p.blocks.size(); ++blk)
            emit_block(i + 1, blk, row.segment(p.block_offset[blk], svec_dim(p.blocks[blk].side)));
    }
    return os.str();
}

void sdpa_export_file(const CanonicalProblem& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << sdpa_export(p);
    if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

CanonicalProblem sdpa_import(const std::string& text) {
    std::istringstream in(text);
    CanonicalProblem p;
    p.id = "imported";
    std::string line;
    std::vector<std::string> comments;
    long m = -1;
    long nblock = -1;
    std::vector<long> sides;
    std::vector<bool> embedded;

    auto next_data_line = [&]() {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '*' || line[0] == '"') {
                comments.push_back(line);
                continue;
            }
            return true;
        }
        return false;
    };

    if (!next_data_line()) throw DomainError("sdpa: missing mDIM");
    m = std::stol(line);
    if (!next_data_line()) throw DomainError("sdpa: missing nBLOCK");
    nblock = std::stol(line);
    if (!next_data_line()) throw DomainError("sdpa: missing block structure");
    {
        std::istringstream bs(line);
        long side;
        while (bs >> side) sides.push_back(std::labs(side));
        if (static_cast<long>(sides.size()) < nblock) throw DomainError("sdpa: short block list");
        sides.resize(nblock);
    }
    if (!next_data_line()) throw DomainError("sdpa: missing rhs vector");
    {
        std::istringstream bv(line);
        std::vector<double> vals;
        double v;
        while (bv >> v) vals.push_back(v);
        if (static_cast<long>(vals.size()) != m) throw DomainError("sdpa: rhs length mismatch");
        p.b = m ? Eigen::Map<RealVector>(vals.data(), m) : RealVector(0);
    }

    embedded.assign(nblock, false);
    std::vector<std::string> names(nblock);
    for (long i = 0; i < nblock; ++i) names[i] = "block" + std::to_string(i);
    for (const auto& c : comments) {
        if (c.rfind("* model ", 0) == 0) p.id = c.substr(8);
        if (c.rfind("* objective-scale ", 0) == 0) p.objective_scale = std::stod(c.substr(18));
        if (c.rfind("* blocks", 0) == 0) {
            std::istringstream bs(c.substr(8));
            std::string name;
            long idx = 0;
            while (bs >> name && idx < nblock) {
                const size_t tag = name.find("(embedded)");
                embedded[idx] = tag != std::string::npos;
                names[idx] = tag == std::string::npos ? name : name.substr(0, tag);
                ++idx;
            }
        }
    }

    p.total_svec_dim = 0;
    for (long i = 0; i < nblock; ++i) {
        CanonicalBlock blk;
        blk.side = sides[i];
        blk.embedded = embedded[i];
        blk.var = names[i];
        blk.space = RegisterSpace::single(
            "q", static_cast<int>(embedded[i] ? sides[i] / 2 : sides[i]));
        p.block_offset.push_back(p.total_svec_dim);
        p.total_svec_dim += svec_dim(blk.side);
        p.blocks.push_back(std::move(blk));
        p.C.push_back(RealMatrix::Zero(sides[i], sides[i]));
    }

    std::vector<Eigen::Triplet<double>> triplets;
    const double rt2 = std::sqrt(2.0);
    long mat, blk, r, c;
    double v;
    while (in >> mat >> blk >> r >> c >> v) {
        if (blk < 1 || blk > nblock) throw DomainError("sdpa: block index out of range");
        const long side = sides[blk - 1];
        if (r < 1 || c < r || c > side) throw DomainError("sdpa: entry index out of range");
        --r;
        --c;
        if (mat == 0) {
            p.C[blk - 1](r, c) = v;
            p.C[blk - 1](c, r) = v;
        } else {
            const long local = r * side - r * (r - 1) / 2 + (c - r);
            const double sval = (r == c) ? v : v * rt2;
            triplets.emplace_back(mat - 1, p.block_offset[blk - 1] + local, sval);
        }
    }
    p.A.resize(m, p.total_svec_dim);
    p.A.setFromTriplets(triplets.begin(), triplets.end());
    p.A.makeCompressed();
    p.row_origin.assign(m, RowOrigin{});
    return p;
}

CanonicalProblem sdpa_import_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return sdpa_import(ss.str());
}

bool canonical_equal(const CanonicalProblem& a, const CanonicalProblem& b) {
    if (a.blocks.size() != b.blocks.size() || a.A.rows() != b.A.rows() ||
        a.b.size() != b.b.size() || a.objective_scale != b.objective_scale)
        return false;
    for (size_t i = 0; i < a.blocks.size(); ++i) {
        if (a.blocks[i].side != b.blocks[i].side) return false;
        if (a.C[i] != b.C[i]) return false;
    }
    if (a.b != b.b) return false;
    const RealMatrix da = RealMatrix(a.A), db = RealMatrix(b.A);
    return da == db;
}

}  // namespace cheatlab

#pragma once
// packing.hpp - Graded embeddings: degree-indexed block matrices, coefficient
// projection, formal packed products, and exact materialization at a
// power-of-two base.

#include <map>
#include <set>
#include <vector>

#include "gpr/matrix.hpp"

namespace gpr {

// Power-of-two extraction base together with the root bound it came from.
struct GlobalBase {
    std::uint64_t Q = 0; // beta = 2^Q
    Int beta;
    Int S0;
    std::size_t n = 0;
    std::int64_t Bmax = 1;
};

class PackedMatrix {
public:
    // The recursion only ever needs degrees in {-1,0,+1}; the hard cap turns
    // contract violations into immediate errors instead of silent growth.
    static constexpr int kMaxDegree = 8;

    PackedMatrix() = default;
    PackedMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::set<int> support() const {
        std::set<int> s;
        for (const auto& [d, _] : blocks_) s.insert(d);
        return s;
    }

    const std::map<int, IntMatrix>& blocks() const { return blocks_; }

    bool hasDegree(int d) const { return blocks_.count(d) != 0; }

    // Zero blocks are pruned so the support stays meaningful.
    void setBlock(int d, IntMatrix m) {
        if (d < -kMaxDegree || d > kMaxDegree)
            throw DegreeOutOfRange("PackedMatrix: degree " + std::to_string(d) +
                                   " outside [-8, 8]");
        if (rows_ == 0) {
            rows_ = m.rows();
            cols_ = m.cols();
        } else if (m.rows() != rows_ || m.cols() != cols_) {
            throw ShapeMismatch("PackedMatrix: block shape differs from container shape");
        }
        if (m.isZero()) {
            blocks_.erase(d);
        } else {
            blocks_.insert_or_assign(d, std::move(m));
        }
    }

    int minDegree() const {
        return blocks_.empty() ? 0 : blocks_.begin()->first;
    }
    int maxDegree() const {
        return blocks_.empty() ? 0 : blocks_.rbegin()->first;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::map<int, IntMatrix> blocks_;
};

inline PackedMatrix embed(const std::vector<std::pair<int, IntMatrix>>& parts) {
    if (parts.empty()) throw BadArgument("embed: no blocks");
    PackedMatrix p(parts.front().second.rows(), parts.front().second.cols());
    std::set<int> seen;
    for (const auto& [d, m] : parts) {
        if (!seen.insert(d).second)
            throw DuplicateDegree("embed: degree " + std::to_string(d) + " given twice");
        if (m.rows() != p.rows() || m.cols() != p.cols())
            throw ShapeMismatch("embed: blocks are not shape-uniform");
        p.setBlock(d, m);
    }
    return p;
}

// Absent degrees project to zero; finite sums have zero coefficients
// everywhere else by definition.
inline IntMatrix project(const PackedMatrix& p, int e) {
    if (p.hasDegree(e)) return p.blocks().at(e);
    return IntMatrix(p.rows(), p.cols(), Provenance::Product);
}

// W^[e] = sum over p+q=e of U^[p] V^[q]; support is the Minkowski sum.
inline PackedMatrix formalProduct(const PackedMatrix& u, const PackedMatrix& v,
                                  CostLedger& ledger) {
    if (u.cols() != v.rows()) throw ShapeMismatch("formalProduct: inner dimensions differ");
    PackedMatrix w(u.rows(), v.cols());
    std::map<int, IntMatrix> acc;
    for (const auto& [p, up] : u.blocks())
        for (const auto& [q, vq] : v.blocks()) {
            IntMatrix prod = costedMatMul(up, vq, ledger);
            auto it = acc.find(p + q);
            if (it == acc.end())
                acc.emplace(p + q, std::move(prod));
            else
                it->second = costedMatAdd(it->second, prod, ledger);
        }
    for (auto& [d, m] : acc) w.setBlock(d, std::move(m));
    return w;
}

// Number of (p, q) support pairs with p + q = e0.
inline std::size_t convolutionWidth(const PackedMatrix& u, const PackedMatrix& v, int e0) {
    std::size_t k = 0;
    for (const auto& [p, _] : u.blocks())
        if (v.hasDegree(e0 - p)) ++k;
    return k;
}

// Scaled materialization V = sum over d of beta^(d+1) P^[d], i.e. beta * P(beta).
// A value z = U beta + M + L/beta is carried as the exact integer
// U beta^2 + M beta + L; every shift is exact.
inline IntMatrix materializeScaled(const PackedMatrix& p, const GlobalBase& base,
                                   CostLedger& ledger) {
    if (!p.blocks().empty() && (p.minDegree() < -1 || p.maxDegree() > 1))
        throw UnsupportedSupport("materializeScaled: support outside {-1,0,+1}");
    IntMatrix v(p.rows(), p.cols(), Provenance::Product);
    for (const auto& [d, m] : p.blocks()) {
        std::int64_t up = (d + 1) * static_cast<std::int64_t>(base.Q);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m.at(r, c).isZero()) continue;
                v.at(r, c) = costedAdd(v.at(r, c), costedShift(m.at(r, c), up, ledger), ledger);
            }
    }
    return v;
}

// Width of the fixed-point representative of entry (r, c) without building
// the integer: span * Q + bitLength of the top nonzero coefficient.
inline std::uint64_t packedEntryWidth(const PackedMatrix& p, std::size_t r, std::size_t c,
                                      std::uint64_t Q) {
    int dmin = 0;
    bool any = false;
    for (const auto& [d, m] : p.blocks())
        if (!m.at(r, c).isZero()) {
            if (!any) dmin = d;
            any = true;
        }
    if (!any) return 1;
    std::uint64_t width = 1;
    for (const auto& [d, m] : p.blocks()) {
        const Int& e = m.at(r, c);
        if (e.isZero()) continue;
        std::uint64_t w = static_cast<std::uint64_t>(d - dmin) * Q + e.bitLength();
        if (w > width) width = w;
    }
    return width;
}

// Records the packed operands a recursion node handles: charges the word
// traffic of their fixed-point representatives and feeds the per-depth
// width table.
inline void notePackedOperand(const PackedMatrix& p, const GlobalBase& base,
                              CostLedger& ledger) {
    for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t c = 0; c < p.cols(); ++c) {
            std::uint64_t w = packedEntryWidth(p, r, c, base.Q);
            ledger.chargeMove(w);
            ledger.noteOperandWidth(w);
        }
}

} // namespace gpr

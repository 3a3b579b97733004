#pragma once
// boolmat.hpp - Boolean matrices, the one-row up-shift, and the offset
// Boolean product realized through the exact integer product with
// thresholding.

#include <vector>

#include "gpr/gpr_matmul.hpp"

namespace gpr {

class BoolMatrix {
public:
    BoolMatrix() = default;
    explicit BoolMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { bits_[i * n_ + j] = v ? 1 : 0; }

    bool any() const {
        for (auto b : bits_)
            if (b) return true;
        return false;
    }

    friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

    BoolMatrix operator|(const BoolMatrix& o) const {
        BoolMatrix r(n_);
        for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
        return r;
    }

    IntMatrix toInt() const {
        IntMatrix m(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (get(i, j)) m.at(i, j) = 1;
        return m;
    }

    static BoolMatrix threshold(const IntMatrix& m) {
        BoolMatrix r(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                r.set(i, j, m.at(i, j).sign() > 0);
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

// (Shift Y)[k][j] = Y[k+1][j] for k < j (0-based upper triangle), 0 elsewhere.
// The last row's content is discarded entirely.
inline BoolMatrix shiftUp(const BoolMatrix& y) {
    std::size_t n = y.size();
    BoolMatrix out(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = k + 1; j < n; ++j) out.set(k, j, y.get(k + 1, j));
    return out;
}

// X ** Y = X o Shift(Y) over (or, and), via the integer product P = X * Shift(Y)
// with Bmax = 1 and positivity thresholding. Only the upper triangle of X is
// meaningful (the or-range starts at k = i), so the rest is masked before the
// product; the diagonal of the result is forced false.
inline BoolMatrix offsetBooleanProduct(const BoolMatrix& x, const BoolMatrix& y,
                                       CostLedger& ledger, const GprConfig& cfgIn = {}) {
    if (x.size() != y.size()) throw ShapeMismatch("offsetBooleanProduct: sizes differ");
    GprConfig cfg = cfgIn;
    cfg.Bmax = 1;
    BoolMatrix xUpper(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j) xUpper.set(i, j, x.get(i, j));
    IntMatrix p = gprTop(xUpper.toInt(), shiftUp(y).toInt(), cfg, ledger);
    ++ledger.bmmCalls;
    BoolMatrix out = BoolMatrix::threshold(p);
    for (std::size_t i = 0; i < out.size(); ++i) out.set(i, i, false);
    return out;
}

// Plain Boolean matrix product over (or, and), same integer-embedding route.
inline BoolMatrix booleanProduct(const BoolMatrix& x, const BoolMatrix& y, CostLedger& ledger,
                                 const GprConfig& cfgIn = {}) {
    if (x.size() != y.size()) throw ShapeMismatch("booleanProduct: sizes differ");
    GprConfig cfg = cfgIn;
    cfg.Bmax = 1;
    IntMatrix p = gprTop(x.toInt(), y.toInt(), cfg, ledger);
    ++ledger.bmmCalls;
    return BoolMatrix::threshold(p);
}

} // namespace gpr

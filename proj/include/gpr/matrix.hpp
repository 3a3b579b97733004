#pragma once
// matrix.hpp - Dense row-major matrix of Int.

#include <cstddef>
#include <iosfwd>
#include <sstream>
#include <string>
#include <vector>

#include "gpr/bigint.hpp"
#include "gpr/costed_ops.hpp"
#include "gpr/rng.hpp"

namespace gpr {

// Input-derived matrices may be repacked; product-derived ones may not.
// The Coefficient Ownership audit keys off this tag.
enum class Provenance { Input, Product };

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, Provenance prov = Provenance::Input)
        : rows_(rows), cols_(cols), entries_(rows * cols), prov_(prov) {
        if (rows == 0 || cols == 0) throw BadArgument("IntMatrix: zero dimension");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix filled(std::size_t rows, std::size_t cols, const Int& v) {
        IntMatrix m(rows, cols);
        for (auto& e : m.entries_) e = v;
        return m;
    }

    static IntMatrix random(std::size_t rows, std::size_t cols, std::int64_t bound,
                            SplitMix64& rng) {
        IntMatrix m(rows, cols);
        for (auto& e : m.entries_) e = Int(rng.range(-bound, bound));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool sameShape(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Int& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Provenance provenance() const { return prov_; }
    void setProvenance(Provenance p) { prov_ = p; }

    bool isZero() const {
        for (const auto& e : entries_)
            if (!e.isZero()) return false;
        return true;
    }

    Int maxAbs() const {
        Int m = 0;
        for (const auto& e : entries_) {
            Int a = e.abs();
            if (a > m) m = a;
        }
        return m;
    }

    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
        if (r0 + h > rows_ || c0 + w > cols_) throw BadArgument("IntMatrix::block: out of range");
        IntMatrix b(h, w, prov_);
        for (std::size_t r = 0; r < h; ++r)
            for (std::size_t c = 0; c < w; ++c) b.at(r, c) = at(r0 + r, c0 + c);
        return b;
    }

    void place(const IntMatrix& b, std::size_t r0, std::size_t c0) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw BadArgument("IntMatrix::place: out of range");
        for (std::size_t r = 0; r < b.rows_; ++r)
            for (std::size_t c = 0; c < b.cols_; ++c) at(r0 + r, c0 + c) = b.at(r, c);
    }

    IntMatrix paddedTo(std::size_t rows, std::size_t cols) const {
        IntMatrix p(rows, cols, prov_);
        p.place(*this, 0, 0);
        return p;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        if (!a.sameShape(b)) throw ShapeMismatch("IntMatrix::operator+: shape mismatch");
        IntMatrix r(a.rows_, a.cols_, Provenance::Product);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            r.entries_[i] = a.entries_[i] + b.entries_[i];
        return r;
    }

    // Text form: first line "rows cols", then one row of decimal integers per line.
    std::string toText() const {
        std::ostringstream out;
        out << rows_ << ' ' << cols_ << '\n';
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (c) out << ' ';
                out << at(r, c).toString();
            }
            out << '\n';
        }
        return out.str();
    }

    static IntMatrix fromText(std::istream& in);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> entries_;
    Provenance prov_ = Provenance::Input;
};

// Schoolbook C = A * B with every step metered.
inline IntMatrix costedMatMul(const IntMatrix& a, const IntMatrix& b, CostLedger& ledger) {
    if (a.cols() != b.rows()) throw ShapeMismatch("costedMatMul: inner dimensions differ");
    IntMatrix c(a.rows(), b.cols(), Provenance::Product);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc = costedAdd(acc, costedMul(a.at(i, k), b.at(k, j), ledger), ledger);
            c.at(i, j) = acc;
        }
    return c;
}

inline IntMatrix costedMatAdd(const IntMatrix& a, const IntMatrix& b, CostLedger& ledger) {
    if (!a.sameShape(b)) throw ShapeMismatch("costedMatAdd: shape mismatch");
    IntMatrix c(a.rows(), a.cols(), Provenance::Product);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = costedAdd(a.at(i, j), b.at(i, j), ledger);
    return c;
}

} // namespace gpr

#include <istream>

namespace gpr {

inline IntMatrix IntMatrix::fromText(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw IoError("IntMatrix::fromText: missing header");
    IntMatrix m(rows, cols);
    std::string tok;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (!(in >> tok)) throw IoError("IntMatrix::fromText: truncated matrix body");
            m.at(r, c) = Int::fromString(tok);
        }
    return m;
}

} // namespace gpr

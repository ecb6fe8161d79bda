#pragma once

// Dense square matrices over cyclotomic numbers.

#include "frob/cyclo.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace frob {

class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n, CycloNumber(0)) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloNumber(1);
        return m;
    }
    static CMatrix diagonal(const std::vector<CycloNumber>& d) {
        CMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t size() const { return n_; }
    CycloNumber& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const CycloNumber& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
        if (x.n_ != y.n_) throw precondition_error("matrix size mismatch");
        CMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                const CycloNumber& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (std::size_t j = 0; j < x.n_; ++j) {
                    const CycloNumber& ykj = y(k, j);
                    if (!ykj.is_zero()) r(i, j) += xik * ykj;
                }
            }
        return r;
    }
    friend CMatrix operator*(const CycloNumber& s, const CMatrix& x) {
        CMatrix r = x;
        for (auto& e : r.a_) e = s * e;
        return r;
    }
    friend CMatrix operator+(const CMatrix& x, const CMatrix& y) {
        CMatrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend bool operator==(const CMatrix& x, const CMatrix& y) {
        if (x.n_ != y.n_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (x.a_[i] != y.a_[i]) return false;
        return true;
    }
    friend bool operator!=(const CMatrix& x, const CMatrix& y) { return !(x == y); }

    // left multiplication by diag(d)
    CMatrix scale_rows(const std::vector<CycloNumber>& d) const {
        CMatrix r = *this;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!r(i, j).is_zero()) r(i, j) = d[i] * r(i, j);
        return r;
    }

    CMatrix conj() const {
        CMatrix r = *this;
        for (auto& e : r.a_) e = e.conj();
        return r;
    }
    CMatrix transpose() const {
        CMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    CMatrix pow(Int e) const {
        CMatrix r = identity(n_), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    CycloNumber trace() const {
        CycloNumber t(0);
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < n_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < n_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
            s += "]\n";
        }
        return s;
    }

private:
    std::size_t n_ = 0;
    std::vector<CycloNumber> a_;
};

inline std::ostream& operator<<(std::ostream& os, const CMatrix& m) { return os << m.str(); }

}  // namespace frob

#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals,
// dense matrices over them, and rational Gaussian elimination.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torbun {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Signals a violated internal invariant rather than bad input.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("dot: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline IntVec negated(const IntVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("add: dimension mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec scaled(const IntVec& v, const Int& c) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

// gcd of all coordinates, nonnegative; 0 for the zero vector.
inline Int content(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

// Divides out the content. Zero vectors stay zero.
inline IntVec primitive(const IntVec& v) {
    Int g = content(v);
    if (g == 0 || g == 1) return v;
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

struct LexLess {
    bool operator()(const IntVec& a, const IntVec& b) const { return lex_less(a, b); }
};

template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw Error("Mat: negative dimension");
    }
    Mat(int rows, int cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != static_cast<std::size_t>(rows) * cols)
            throw Error("Mat: entry count does not match dimensions");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    std::vector<T> col(int j) const {
        std::vector<T> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_row(int i, const std::vector<T>& v) {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> e_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

template <typename T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw Error("Mat multiply: dimension mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <typename T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("Mat add: dimension mismatch");
    Mat<T> c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

template <typename T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("Mat subtract: dimension mismatch");
    Mat<T> c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

template <typename T>
std::vector<T> operator*(const Mat<T>& a, const std::vector<T>& v) {
    if (a.cols() != static_cast<int>(v.size())) throw Error("matvec: dimension mismatch");
    std::vector<T> r(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        T s = 0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline RatMat to_rational(const IntMat& a) {
    RatMat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
    return r;
}

// Requires every entry to be an integer.
inline IntMat to_integer(const RatMat& a) {
    IntMat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Rat& q = a(i, j);
            if (boost::multiprecision::denominator(q) != 1)
                throw Error("to_integer: non-integral entry");
            r(i, j) = boost::multiprecision::numerator(q);
        }
    return r;
}

// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<int> rref(RatMat& a) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int p = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rat inv = Rat(1) / a(r, c);
        for (int j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RatMat a) { return static_cast<int>(rref(a).size()); }

inline int rank(const IntMat& a) { return rank(to_rational(a)); }

inline Rat det(RatMat a) {
    if (a.rows() != a.cols()) throw Error("det: matrix not square");
    Rat d = 1;
    for (int c = 0; c < a.cols(); ++c) {
        int p = -1;
        for (int i = c; i < a.rows(); ++i)
            if (a(i, c) != 0) { p = i; break; }
        if (p < 0) return Rat(0);
        if (p != c) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        Rat inv = Rat(1) / a(c, c);
        for (int i = c + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) * inv;
            for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

inline Int det(const IntMat& a) {
    Rat d = det(to_rational(a));
    if (boost::multiprecision::denominator(d) != 1)
        throw InternalError("integer determinant came out fractional");
    return boost::multiprecision::numerator(d);
}

inline std::optional<RatMat> inverse(const RatMat& a) {
    if (a.rows() != a.cols()) throw Error("inverse: matrix not square");
    int n = a.rows();
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1))
        return std::nullopt;
    RatMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline RatMat inverse_or_throw(const RatMat& a) {
    auto inv = inverse(a);
    if (!inv) throw Error("matrix is singular");
    return *inv;
}

// General solution of a*x = b: a particular solution plus a nullspace basis,
// or nullopt when inconsistent.
struct AffineSolution {
    RatVec particular;
    std::vector<RatVec> nullspace;
};

inline std::optional<AffineSolution> solve_affine(const RatMat& a, const RatVec& b) {
    if (a.rows() != static_cast<int>(b.size())) throw Error("solve_affine: size mismatch");
    int n = a.cols();
    RatMat aug(a.rows(), n + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // 0 = 1 row
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;

    AffineSolution sol;
    sol.particular.assign(n, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = aug(static_cast<int>(r), n);
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(n, Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -aug(static_cast<int>(r), c);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

inline std::string to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string to_string(const Int& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

// Accepts "p" or "p/q" with optional leading minus; q must be positive.
inline Rat parse_rational(const std::string& s) {
    auto bad = [&]() -> Error { return Error("malformed rational \"" + s + "\""); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t, bool allow_sign) {
        if (t.empty()) throw bad();
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) throw bad();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw bad();
    };
    try {
        if (slash == std::string::npos) {
            check_int(s, true);
            return Rat(Int(s));
        }
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        check_int(num, true);
        check_int(den, false);
        Int d(den);
        if (d == 0) throw bad();
        return Rat(Int(num), d);
    } catch (const std::exception&) {
        throw bad();
    }
}

inline std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

template <typename T>
std::string to_string(const Mat<T>& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) s += ", ";
        s += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += to_string(m(i, j));
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace torbun

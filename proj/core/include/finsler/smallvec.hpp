// Fixed-capacity dense vectors/matrices for chart dimensions n <= 8.
// Templated over the scalar so the same tensor code runs on doubles and
// nested duals.
#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>

#include "finsler/dual.hpp"

namespace finsler {

inline constexpr int kMaxDim = 8;

template <class T>
class Vec {
  public:
    Vec() : n_(0) {}
    explicit Vec(int n) : n_(n) { assert(n >= 0 && n <= kMaxDim); }
    Vec(std::initializer_list<T> xs) : n_(static_cast<int>(xs.size())) {
        assert(n_ <= kMaxDim);
        int i = 0;
        for (const T& x : xs) v_[i++] = x;
    }
    static Vec zero(int n) {
        Vec r(n);
        for (int i = 0; i < n; ++i) r[i] = T{};
        return r;
    }
    static Vec axis(int n, int i, T s = T(1.0)) {
        Vec r = zero(n);
        r[i] = s;
        return r;
    }

    int size() const { return n_; }
    T& operator[](int i) { return v_[i]; }
    const T& operator[](int i) const { return v_[i]; }
    const T* data() const { return v_.data(); }
    T* data() { return v_.data(); }
    std::span<const T> span() const { return {v_.data(), static_cast<size_t>(n_)}; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n_; ++i) v_[i] += o[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n_; ++i) v_[i] = v_[i] - o[i];
        return *this;
    }

  private:
    std::array<T, kMaxDim> v_{};
    int n_;
};

using VecD = Vec<double>;

template <class T>
Vec<T> operator+(Vec<T> a, const Vec<T>& b) { a += b; return a; }
template <class T>
Vec<T> operator-(Vec<T> a, const Vec<T>& b) { a -= b; return a; }
template <class T, class S>
Vec<T> operator*(const Vec<T>& a, S c) {
    Vec<T> r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}
template <class T, class S>
Vec<T> operator*(S c, const Vec<T>& a) { return a * c; }
template <class T>
Vec<T> operator-(const Vec<T>& a) {
    Vec<T> r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    T s{};
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const VecD& a) { return std::sqrt(dot(a, a)); }
inline double dist(const VecD& a, const VecD& b) { return norm(a - b); }

// Euclidean norm usable with dual scalars.
template <class T>
T enorm(const Vec<T>& a) {
    T s{};
    for (int i = 0; i < a.size(); ++i) s += a[i] * a[i];
    return sqrt(s);
}

template <class T>
class Mat {
  public:
    Mat() : n_(0) {}
    explicit Mat(int n) : n_(n) { assert(n >= 0 && n <= kMaxDim); }
    static Mat zero(int n) {
        Mat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = T{};
        return r;
    }
    static Mat identity(int n) {
        Mat r = zero(n);
        for (int i = 0; i < n; ++i) r(i, i) = T(1.0);
        return r;
    }

    int size() const { return n_; }
    T& operator()(int i, int j) { return v_[i * kMaxDim + j]; }
    const T& operator()(int i, int j) const { return v_[i * kMaxDim + j]; }

    Vec<T> row(int i) const {
        Vec<T> r(n_);
        for (int j = 0; j < n_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    Vec<T> col(int j) const {
        Vec<T> r(n_);
        for (int i = 0; i < n_; ++i) r[i] = (*this)(i, j);
        return r;
    }

  private:
    std::array<T, kMaxDim * kMaxDim> v_{};
    int n_;
};

using MatD = Mat<double>;

template <class T>
Vec<T> operator*(const Mat<T>& m, const Vec<T>& x) {
    Vec<T> r(x.size());
    for (int i = 0; i < x.size(); ++i) {
        T s{};
        for (int j = 0; j < x.size(); ++j) s += m(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
    int n = a.size();
    Mat<T> r = Mat<T>::zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

template <class T>
T trace(const Mat<T>& a) {
    T s{};
    for (int i = 0; i < a.size(); ++i) s += a(i, i);
    return s;
}

// LU with partial pivoting; works on dual scalars (pivot by value magnitude).
// Returns false when the matrix is numerically singular.
template <class T>
bool lu_factor(Mat<T>& a, std::array<int, kMaxDim>& perm, int& sign) {
    int n = a.size();
    sign = 1;
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(value(a(k, k)));
        for (int i = k + 1; i < n; ++i) {
            double m = std::fabs(value(a(i, k)));
            if (m > best) { best = m; p = i; }
        }
        if (best == 0.0) return false;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            T f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
        }
    }
    return true;
}

template <class T>
Vec<T> lu_solve(const Mat<T>& lu, const std::array<int, kMaxDim>& perm, const Vec<T>& b) {
    int n = lu.size();
    Vec<T> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] = x[i] - lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] = x[i] - lu(i, j) * x[j];
        x[i] = x[i] / lu(i, i);
    }
    return x;
}

template <class T>
bool solve(Mat<T> a, const Vec<T>& b, Vec<T>& out) {
    std::array<int, kMaxDim> perm;
    int sign;
    if (!lu_factor(a, perm, sign)) return false;
    out = lu_solve(a, perm, b);
    return true;
}

template <class T>
T det(Mat<T> a) {
    std::array<int, kMaxDim> perm;
    int sign;
    if (!lu_factor(a, perm, sign)) return T{};
    T d = T(static_cast<double>(sign));
    for (int i = 0; i < a.size(); ++i) d *= a(i, i);
    return d;
}

template <class T>
bool invert(Mat<T> a, Mat<T>& out) {
    int n = a.size();
    std::array<int, kMaxDim> perm;
    int sign;
    if (!lu_factor(a, perm, sign)) return false;
    out = Mat<T>(n);
    for (int j = 0; j < n; ++j) {
        Vec<T> e = Vec<T>::axis(n, j);
        Vec<T> c = lu_solve(a, perm, e);
        for (int i = 0; i < n; ++i) out(i, j) = c[i];
    }
    return true;
}

}  // namespace finsler

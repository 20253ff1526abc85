#ifndef QONS_MATRIX_HPP
#define QONS_MATRIX_HPP

#include <map>
#include <vector>

#include "qons/scalar.hpp"

namespace qons {

// Sparse square-ish matrix: row-indexed maps column -> value, no stored zeros.
template <class T>
class SpMat {
  public:
    SpMat() : rows_(0), cols_(0) {}
    SpMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}
    static SpMat identity(int n) {
        SpMat m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, scalar_traits<T>::one());
        return m;
    }
    static SpMat zero(int n) { return SpMat(n, n); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int i, int j, const T& v) {
        if (scalar_traits<T>::is_zero(v))
            data_[i].erase(j);
        else
            data_[i][j] = v;
    }
    void add_to(int i, int j, const T& v) {
        auto it = data_[i].find(j);
        if (it == data_[i].end()) {
            if (!scalar_traits<T>::is_zero(v)) data_[i][j] = v;
        } else {
            it->second += v;
            if (scalar_traits<T>::is_zero(it->second)) data_[i].erase(it);
        }
    }
    T get(int i, int j) const {
        auto it = data_[i].find(j);
        return it == data_[i].end() ? scalar_traits<T>::zero() : it->second;
    }
    const std::map<int, T>& row(int i) const { return data_[i]; }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    SpMat operator+(const SpMat& o) const {
        require_same_shape(o);
        SpMat out = *this;
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : o.data_[i]) out.add_to(i, j, v);
        return out;
    }
    SpMat operator-(const SpMat& o) const {
        require_same_shape(o);
        SpMat out = *this;
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : o.data_[i]) out.add_to(i, j, -v);
        return out;
    }
    SpMat operator*(const T& c) const {
        SpMat out(rows_, cols_);
        if (scalar_traits<T>::is_zero(c)) return out;
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i]) out.data_[i][j] = v * c;
        return out;
    }
    SpMat operator*(const SpMat& o) const {
        if (cols_ != o.rows_) throw mismatch_error("matrix product shape mismatch");
        SpMat out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [k, v] : data_[i])
                for (const auto& [j, w] : o.data_[k]) out.add_to(i, j, v * w);
        return out;
    }
    bool operator==(const SpMat& o) const { return (*this - o).is_zero(); }

    T trace() const {
        T t = scalar_traits<T>::zero();
        for (int i = 0; i < rows_ && i < cols_; ++i) t += get(i, i);
        return t;
    }

  private:
    void require_same_shape(const SpMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw mismatch_error("matrix shape mismatch");
    }
    int rows_, cols_;
    std::vector<std::map<int, T>> data_;
};

template <class T>
SpMat<T> kron(const SpMat<T>& a, const SpMat<T>& b) {
    SpMat<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (const auto& [j, v] : a.row(i))
            for (int k = 0; k < b.rows(); ++k)
                for (const auto& [l, w] : b.row(k)) out.set(i * b.rows() + k, j * b.cols() + l, v * w);
    return out;
}

template <class T>
SpMat<T> comm(const SpMat<T>& a, const SpMat<T>& b) {
    return a * b - b * a;
}

// q-commutator [a,b]_q = q a b - q^{-1} b a
template <class T>
SpMat<T> qcomm(const T& q, const SpMat<T>& a, const SpMat<T>& b) {
    return a * b * q - b * a * (scalar_traits<T>::one() / q);
}

// Pauli matrices and friends over any scalar backend
template <class T> SpMat<T> sigma_p() {
    SpMat<T> m(2, 2);
    m.set(0, 1, scalar_traits<T>::one());
    return m;
}
template <class T> SpMat<T> sigma_m() {
    SpMat<T> m(2, 2);
    m.set(1, 0, scalar_traits<T>::one());
    return m;
}
template <class T> SpMat<T> sigma_3() {
    SpMat<T> m(2, 2);
    m.set(0, 0, scalar_traits<T>::one());
    m.set(1, 1, -scalar_traits<T>::one());
    return m;
}
template <class T> SpMat<T> q_sigma3(const T& q) {  // q^{sigma_3}
    SpMat<T> m(2, 2);
    m.set(0, 0, q);
    m.set(1, 1, scalar_traits<T>::one() / q);
    return m;
}

// Kronecker embedding of a local operator, site 1 = rightmost tensor factor
// (ordering V_N (x) ... (x) V_1). `local` acts on `span` adjacent sites
// [site .. site+span-1].
template <class T>
SpMat<T> tensor_embed(const SpMat<T>& local, int site, int span, int n_sites) {
    if (site < 1 || site + span - 1 > n_sites) throw domain_error("tensor_embed: site out of range");
    int right = 1 << (site - 1);                      // identity on sites 1..site-1
    int left = 1 << (n_sites - site - span + 1);      // identity on sites site+span..N
    SpMat<T> out = kron(SpMat<T>::identity(left), kron(local, SpMat<T>::identity(right)));
    return out;
}

// Reverse the order of all N tensor factors (conjugation by the permutation
// a_1 (x) ... (x) a_N -> a_N (x) ... (x) a_1).
template <class T>
SpMat<T> reverse_sites(const SpMat<T>& m, int n_sites) {
    int dim = 1 << n_sites;
    auto rev = [n_sites](int idx) {
        int out = 0;
        for (int b = 0; b < n_sites; ++b)
            if (idx & (1 << b)) out |= 1 << (n_sites - 1 - b);
        return out;
    };
    SpMat<T> out(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (const auto& [j, v] : m.row(i)) out.set(rev(i), rev(j), v);
    return out;
}

}  // namespace qons

#endif

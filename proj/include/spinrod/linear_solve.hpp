#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinrod {

/// Dense LU factorization with partial pivoting; solves in place.
class DenseLU {
public:
    explicit DenseLU(std::vector<double> a, int n) : n_(n), a_(std::move(a)), piv_(n) {
        if (static_cast<int>(a_.size()) != n * n)
            throw std::invalid_argument("DenseLU: bad matrix size");
        factor();
    }

    std::vector<double> solve(std::vector<double> b) const {
        if (static_cast<int>(b.size()) != n_)
            throw std::invalid_argument("DenseLU: bad rhs size");
        for (int k = 0; k < n_; ++k) {
            std::swap(b[k], b[piv_[k]]);
            for (int i = k + 1; i < n_; ++i) b[i] -= at(i, k) * b[k];
        }
        for (int k = n_ - 1; k >= 0; --k) {
            for (int j = k + 1; j < n_; ++j) b[k] -= at(k, j) * b[j];
            b[k] /= at(k, k);
        }
        return b;
    }

private:
    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void factor() {
        for (int k = 0; k < n_; ++k) {
            int p = k;
            double best = std::abs(at(k, k));
            for (int i = k + 1; i < n_; ++i) {
                const double v = std::abs(at(i, k));
                if (v > best) { best = v; p = i; }
            }
            if (!(best > 0)) throw std::runtime_error("DenseLU: singular matrix");
            piv_[k] = p;
            if (p != k)
                for (int j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
            const double d = at(k, k);
            for (int i = k + 1; i < n_; ++i) {
                const double m = at(i, k) / d;
                at(i, k) = m;
                if (m != 0.0)
                    for (int j = k + 1; j < n_; ++j) at(i, j) -= m * at(k, j);
            }
        }
    }

    int n_;
    std::vector<double> a_;
    std::vector<int> piv_;
};

/// Banded matrix with kl sub- and ku superdiagonals in LAPACK-style band
/// storage (kl extra rows on top hold the pivoting fill-in). Entry (i, j) is
/// valid for |i - j| within the bands.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), stride_(2 * kl + ku + 1),
          ab_(static_cast<std::size_t>(stride_) * n, 0.0) {}

    int size() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    bool in_band(int i, int j) const {
        return i - j <= kl_ && j - i <= ku_;
    }

    double& at(int i, int j) { return ab_[idx(i, j)]; }
    double at(int i, int j) const { return ab_[idx(i, j)]; }

    void clear() { std::fill(ab_.begin(), ab_.end(), 0.0); }

private:
    // row i, column j stored at band row kl + ku + i - j; fill-in from
    // pivoting extends up to kl rows above the original band.
    std::size_t idx(int i, int j) const {
        const int r = kl_ + ku_ + i - j;
        return static_cast<std::size_t>(r) + static_cast<std::size_t>(j) * stride_;
    }

    int n_, kl_, ku_, stride_;
    std::vector<double> ab_;

    friend class BandedLU;
};

/// LU factorization of a banded matrix with partial pivoting (row swaps stay
/// within kl rows, fill widens the upper band to kl + ku).
class BandedLU {
public:
    explicit BandedLU(BandedMatrix m) : m_(std::move(m)), piv_(m_.n_) { factor(); }

    std::vector<double> solve(std::vector<double> b) const {
        const int n = m_.n_, kl = m_.kl_;
        if (static_cast<int>(b.size()) != n)
            throw std::invalid_argument("BandedLU: bad rhs size");
        for (int k = 0; k < n; ++k) {
            std::swap(b[k], b[piv_[k]]);
            const int iend = std::min(n - 1, k + kl);
            for (int i = k + 1; i <= iend; ++i) b[i] -= entry(i, k) * b[k];
        }
        const int kw = m_.kl_ + m_.ku_;
        for (int k = n - 1; k >= 0; --k) {
            const int jend = std::min(n - 1, k + kw);
            for (int j = k + 1; j <= jend; ++j) b[k] -= entry(k, j) * b[j];
            b[k] /= entry(k, k);
        }
        return b;
    }

private:
    double& entry(int i, int j) { return m_.ab_[m_.idx(i, j)]; }
    double entry(int i, int j) const { return m_.ab_[m_.idx(i, j)]; }

    void factor() {
        const int n = m_.n_, kl = m_.kl_, kw = m_.kl_ + m_.ku_;
        for (int k = 0; k < n; ++k) {
            int p = k;
            double best = std::abs(entry(k, k));
            const int iend = std::min(n - 1, k + kl);
            for (int i = k + 1; i <= iend; ++i) {
                const double v = std::abs(entry(i, k));
                if (v > best) { best = v; p = i; }
            }
            if (!(best > 0)) throw std::runtime_error("BandedLU: singular matrix");
            piv_[k] = p;
            const int jend = std::min(n - 1, k + kw);
            if (p != k)
                for (int j = k; j <= jend; ++j) std::swap(entry(k, j), entry(p, j));
            const double d = entry(k, k);
            for (int i = k + 1; i <= iend; ++i) {
                const double m = entry(i, k) / d;
                entry(i, k) = m;
                if (m != 0.0)
                    for (int j = k + 1; j <= jend; ++j) entry(i, j) -= m * entry(k, j);
            }
        }
    }

    BandedMatrix m_;
    std::vector<int> piv_;
};

}  // namespace spinrod

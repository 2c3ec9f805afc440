#include "d2d/simplex.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace d2d {

namespace {

// Revised-tableau simplex in the KACTL formulation.  Entering/leaving
// choices break ties by variable index (Bland-style), which keeps the
// solver deterministic and cycle-free in practice.
class Tableau {
  public:
    static constexpr double kEps = 1e-9;

    Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
        : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), basis_n_(n_ + 1),
          basis_b_(m_), d_(Eigen::MatrixXd::Zero(m_ + 2, n_ + 2)) {
        d_.topLeftCorner(m_, n_) = a;
        for (int i = 0; i < m_; ++i) {
            basis_b_[i] = n_ + i;
            d_(i, n_) = -1.0;
            d_(i, n_ + 1) = b(i);
        }
        for (int j = 0; j < n_; ++j) {
            basis_n_[j] = j;
            d_(m_, j) = -c(j);
        }
        basis_n_[n_] = -1;
        d_(m_ + 1, n_) = 1.0;
    }

    LpStatus run(Eigen::VectorXd& x, double& value) {
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
        if (d_(r, n_ + 1) < -kEps) {
            pivot(r, n_);
            if (!iterate(2) || d_(m_ + 1, n_ + 1) < -kEps) return LpStatus::Infeasible;
            for (int i = 0; i < m_; ++i) {
                if (basis_b_[i] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j)
                    if (pick(d_(i, j), basis_n_[j], d_(i, s), basis_n_[s])) s = j;
                pivot(i, s);
            }
        }
        const bool bounded = iterate(1);
        x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < m_; ++i)
            if (basis_b_[i] < n_) x(basis_b_[i]) = d_(i, n_ + 1);
        value = d_(m_, n_ + 1);
        return bounded ? LpStatus::Optimal : LpStatus::Unbounded;
    }

  private:
    static bool pick(double va, int ia, double vb, int ib) {
        return std::make_pair(va, ia) < std::make_pair(vb, ib);
    }

    void pivot(int r, int s) {
        const double inv = 1.0 / d_(r, s);
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            const double ais = d_(i, s);
            if (std::fabs(ais) > kEps) d_.row(i) -= (ais * inv) * d_.row(r);
            d_(i, s) = -ais * inv;
        }
        d_.row(r) *= inv;
        d_(r, s) = inv;
        std::swap(basis_b_[r], basis_n_[s]);
    }

    bool iterate(int phase) {
        const int obj = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (basis_n_[j] == -phase) continue;
                if (s == -1 || pick(d_(obj, j), basis_n_[j], d_(obj, s), basis_n_[s])) s = j;
            }
            if (d_(obj, s) >= -kEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (d_(i, s) <= kEps) continue;
                if (r == -1 ||
                    pick(d_(i, n_ + 1) / d_(i, s), basis_b_[i],
                         d_(r, n_ + 1) / d_(r, s), basis_b_[r]))
                    r = i;
            }
            if (r == -1) return false;
            pivot(r, s);
        }
    }

    int m_, n_;
    std::vector<int> basis_n_, basis_b_;
    Eigen::MatrixXd d_;
};

} // namespace

LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    LpResult res;
    Tableau t(a, b, c);
    res.status = t.run(res.x, res.value);
    return res;
}

} // namespace d2d

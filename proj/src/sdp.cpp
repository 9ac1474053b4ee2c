// Copyright 2026 The eprapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epr/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace epr {

namespace {

PauliString two_site(int n, int i, int j, bool x, bool z) {
    PauliString p{n, 0, 0};
    const std::uint64_t m = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    if (x) {
        p.x = m;
    }
    if (z) {
        p.z = m;
    }
    return p;
}

// Invariant under the global symmetries H commutes with: conjugation by the
// all-X and all-Z strings, and complex conjugation (which flips Y). The
// moment matrix of a symmetrized optimum is block diagonal across charges.
int charge(const PauliString &p) {
    return (std::popcount(p.z) & 1) | ((std::popcount(p.x) & 1) << 1) | ((std::popcount(p.x & p.z) & 1) << 2);
}

struct EdgeTerms {
    int xx, yy, zz;
};

EdgeTerms edge_terms(const Relaxation &rel, const Edge &e) {
    const int n = rel.constraints.num_qubits;
    auto lookup = [&](bool x, bool z) { return *rel.constraints.find(two_site(n, e.u, e.v, x, z)); };
    return {lookup(true, false), lookup(true, true), lookup(false, true)};
}

void fill_edge_values(MomentSolution &sol) {
    const Relaxation &rel = *sol.relaxation;
    sol.g.assign(sol.edges.size(), 0.0);
    sol.q.assign(sol.edges.size(), 0.0);
    sol.u = 0.0;
    for (size_t k = 0; k < sol.edges.size(); ++k) {
        const EdgeTerms t = edge_terms(rel, sol.edges[k]);
        const double lxx = sol.class_values[t.xx];
        const double lyy = sol.class_values[t.yy];
        const double lzz = sol.class_values[t.zz];
        sol.g[k] = (-1.0 + lxx - lyy + lzz) / 2.0;
        sol.q[k] = (-1.0 - lxx - lyy - lzz) / 2.0;
        sol.u += sol.edges[k].w * (1.0 + sol.g[k]);
    }
}

Eigen::MatrixXd assemble_gamma(const ConstraintClasses &cc, const std::vector<double> &values) {
    const auto dim = static_cast<Eigen::Index>(cc.basis.size());
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(dim, dim);
    for (size_t c = 0; c < cc.classes.size(); ++c) {
        for (const ClassMember &m : cc.classes[c].members) {
            gamma(m.a, m.b) = gamma(m.b, m.a) = m.sign * values[c];
        }
    }
    return gamma;
}

// Type-II Anderson acceleration for a fixed-point map x -> f(x), fed with
// f and the residual g = f - x at each iterate.
class AndersonMixer {
   public:
    explicit AndersonMixer(int memory) : memory_(std::max(0, memory)) {}

    void reset() {
        df_.clear();
        dg_.clear();
        has_last_ = false;
    }

    int size() const { return static_cast<int>(dg_.size()); }

    Eigen::VectorXd step(const Eigen::VectorXd &f, const Eigen::VectorXd &g) {
        if (memory_ == 0) {
            return f;
        }
        if (has_last_) {
            df_.push_back(f - f_last_);
            dg_.push_back(g - g_last_);
            if (static_cast<int>(dg_.size()) > memory_) {
                df_.pop_front();
                dg_.pop_front();
            }
        }
        f_last_ = f;
        g_last_ = g;
        has_last_ = true;
        if (dg_.empty()) {
            return f;
        }
        const int k = size();
        Eigen::MatrixXd gram(k, k);
        Eigen::VectorXd rhs(k);
        for (int i = 0; i < k; ++i) {
            rhs(i) = dg_[i].dot(g);
            for (int j = 0; j <= i; ++j) {
                gram(i, j) = gram(j, i) = dg_[i].dot(dg_[j]);
            }
        }
        gram.diagonal().array() += 1e-12 * gram.trace() / k + 1e-300;
        const Eigen::VectorXd gamma = gram.ldlt().solve(rhs);
        Eigen::VectorXd out = f;
        for (int i = 0; i < k; ++i) {
            out -= gamma(i) * df_[i];
        }
        return out;
    }

   private:
    int memory_;
    std::deque<Eigen::VectorXd> df_, dg_;
    Eigen::VectorXd f_last_, g_last_;
    bool has_last_ = false;
};

// Diagonal blocks of the moment matrix with the class entries each carries,
// in block-local coordinates.
struct Block {
    std::vector<int> rows;
    std::vector<int> la, lb, sign, cls;  // sorted by cls
};

struct BlockLayout {
    std::vector<Block> blocks;
    std::vector<double> count;  // squared Frobenius norm of each class matrix
    std::vector<int> active;    // classes with entries inside some block
    std::vector<int> slot;      // class -> position in active, or -1

    BlockLayout(const ConstraintClasses &cc, bool symmetry_reduction) {
        const int dim = static_cast<int>(cc.basis.size());
        std::vector<int> block_of(dim, 0);
        if (symmetry_reduction) {
            int index[8];
            std::fill(std::begin(index), std::end(index), -1);
            for (int a = 0; a < dim; ++a) {
                const int ch = charge(cc.basis[a]);
                if (index[ch] < 0) {
                    index[ch] = static_cast<int>(blocks.size());
                    blocks.emplace_back();
                }
                block_of[a] = index[ch];
            }
        } else {
            blocks.emplace_back();
        }
        std::vector<int> local(dim);
        for (int a = 0; a < dim; ++a) {
            local[a] = static_cast<int>(blocks[block_of[a]].rows.size());
            blocks[block_of[a]].rows.push_back(a);
        }
        count.assign(cc.classes.size(), 0.0);
        slot.assign(cc.classes.size(), -1);
        for (size_t c = 0; c < cc.classes.size(); ++c) {
            for (const ClassMember &m : cc.classes[c].members) {
                if (block_of[m.a] != block_of[m.b]) {
                    continue;
                }
                Block &blk = blocks[block_of[m.a]];
                blk.la.push_back(local[m.a]);
                blk.lb.push_back(local[m.b]);
                blk.sign.push_back(m.sign);
                blk.cls.push_back(static_cast<int>(c));
                count[c] += 2.0;
            }
            if (count[c] > 0) {
                slot[c] = static_cast<int>(active.size());
                active.push_back(static_cast<int>(c));
            }
        }
    }

    Eigen::MatrixXd identity(const Block &blk) const {
        const auto size = static_cast<Eigen::Index>(blk.rows.size());
        return Eigen::MatrixXd::Identity(size, size);
    }

    // I + sum_c y_c A_c restricted to the block.
    void build(const Block &blk, const std::vector<double> &y, Eigen::MatrixXd &out) const {
        const auto size = static_cast<Eigen::Index>(blk.rows.size());
        out.setIdentity(size, size);
        for (size_t k = 0; k < blk.cls.size(); ++k) {
            const double v = blk.sign[k] * y[blk.cls[k]];
            out(blk.la[k], blk.lb[k]) = v;
            out(blk.lb[k], blk.la[k]) = v;
        }
    }

    // Adds <A_c, K_b> over all blocks into out[c].
    void adjoint(const std::vector<Eigen::MatrixXd> &k, std::vector<double> &out) const {
        std::fill(out.begin(), out.end(), 0.0);
        for (size_t b = 0; b < blocks.size(); ++b) {
            const Block &blk = blocks[b];
            for (size_t e = 0; e < blk.cls.size(); ++e) {
                out[blk.cls[e]] += blk.sign[e] * (k[b](blk.la[e], blk.lb[e]) + k[b](blk.lb[e], blk.la[e]));
            }
        }
    }
};

double min_eigenvalue(const Eigen::MatrixXd &m) {
    if (m.rows() == 0) {
        return 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Upper bound from an approximate dual matrix W (one block each): W is
// corrected onto the affine constraints <W, A_c> = -b_c, then shifted to PSD
// along the identity, which leaves those constraints untouched. The result
// bounds the relaxation value regardless of how accurate W was.
double dual_bound(const BlockLayout &layout, const Relaxation &rel, std::vector<Eigen::MatrixXd> w) {
    std::vector<double> inner(layout.count.size());
    for (Eigen::MatrixXd &m : w) {
        m = 0.5 * (m + m.transpose()).eval();
    }
    layout.adjoint(w, inner);
    for (size_t b = 0; b < layout.blocks.size(); ++b) {
        const Block &blk = layout.blocks[b];
        for (size_t e = 0; e < blk.cls.size(); ++e) {
            const int c = blk.cls[e];
            const double delta = (-rel.objective[c] - inner[c]) / layout.count[c];
            w[b](blk.la[e], blk.lb[e]) += blk.sign[e] * delta;
            w[b](blk.lb[e], blk.la[e]) += blk.sign[e] * delta;
        }
    }
    double bound = rel.constant;
    for (const Eigen::MatrixXd &m : w) {
        const double shift = std::max(0.0, -min_eigenvalue(m));
        bound += m.trace() + static_cast<double>(m.rows()) * shift;
    }
    return bound;
}

struct SolverResult {
    std::vector<double> y;
    std::vector<Eigen::MatrixXd> dual;  // per block, for dual_bound
    int iterations = 0;
    bool converged = false;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

Eigen::MatrixXd psd_projection(const Eigen::MatrixXd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

// ADMM on  max b.y  s.t.  X(y) = I + sum_c y_c A_c = Z,  Z PSD, with the
// scaled multiplier U, residual balancing on rho and Anderson acceleration
// of the (Z, U) fixed-point map.
class AdmmSolver {
   public:
    AdmmSolver(const BlockLayout &layout, const Relaxation &rel, const SolverOptions &opt)
        : layout_(layout), rel_(rel), opt_(opt) {
        for (const Block &blk : layout.blocks) {
            z_.push_back(layout.identity(blk));
            u_.push_back(Eigen::MatrixXd::Zero(z_.back().rows(), z_.back().cols()));
            x_.push_back(z_.back());
            state_size_ += 2 * z_.back().size();
        }
        y_.assign(layout.count.size(), 0.0);
        acc_.assign(layout.count.size(), 0.0);
    }

    SolverResult run() {
        double rho = opt_.rho;
        double r = 0.0;
        double s = 0.0;
        int iter = 0;
        bool converged = false;
        AndersonMixer mixer(opt_.anderson_memory);
        Eigen::VectorXd v = pack();
        Eigen::VectorXd f_prev;
        double g_norm_prev = std::numeric_limits<double>::infinity();
        bool accelerated = false;
        while (iter < opt_.max_iters) {
            ++iter;
            unpack(v);
            sweep(rho, r, s);
            if (r <= opt_.tol && s <= opt_.tol) {
                converged = true;
                break;
            }
            Eigen::VectorXd f = pack();
            const Eigen::VectorXd g = f - v;
            const double g_norm = g.norm();
            if (accelerated && g_norm > g_norm_prev) {
                // The extrapolated point made things worse; fall back to the
                // plain iterate it was built from.
                mixer.reset();
                v = f_prev;
                accelerated = false;
                continue;
            }
            if (iter % 50 == 0 && (r > 10.0 * s || s > 10.0 * r)) {
                const double factor = r > s ? 2.0 : 0.5;
                rho *= factor;
                for (Eigen::MatrixXd &u : u_) u /= factor;
                mixer.reset();
                v = pack();
                g_norm_prev = std::numeric_limits<double>::infinity();
                accelerated = false;
                continue;
            }
            v = mixer.step(f, g);
            accelerated = mixer.size() > 0;
            f_prev = std::move(f);
            g_norm_prev = g_norm;
        }

        SolverResult out;
        out.y = y_;
        out.iterations = iter;
        out.converged = converged;
        out.primal_residual = r;
        out.dual_residual = s;
        for (const Eigen::MatrixXd &u : u_) {
            out.dual.push_back(-rho * u);
        }
        return out;
    }

   private:
    // One ADMM pass from the current (Z, U).
    void sweep(double rho, double &r, double &s) {
        const auto &b = rel_.objective;
        // y-update: least-squares fit of the class structure to Z - U,
        // shifted along the objective.
        std::fill(acc_.begin(), acc_.end(), 0.0);
        for (size_t bi = 0; bi < layout_.blocks.size(); ++bi) {
            const Block &blk = layout_.blocks[bi];
            for (size_t k = 0; k < blk.cls.size(); ++k) {
                const double v = z_[bi](blk.la[k], blk.lb[k]) - u_[bi](blk.la[k], blk.lb[k]);
                acc_[blk.cls[k]] += 2.0 * blk.sign[k] * v;
            }
        }
        for (size_t c = 0; c < y_.size(); ++c) {
            y_[c] = layout_.count[c] > 0 ? (acc_[c] + b[c] / rho) / layout_.count[c] : 0.0;
        }
        double r2 = 0.0;
        double s2 = 0.0;
        for (size_t bi = 0; bi < layout_.blocks.size(); ++bi) {
            layout_.build(layout_.blocks[bi], y_, x_[bi]);
            Eigen::MatrixXd z_new = psd_projection(x_[bi] + u_[bi]);
            u_[bi] += x_[bi] - z_new;
            r2 += (x_[bi] - z_new).squaredNorm();
            s2 += (z_new - z_[bi]).squaredNorm();
            z_[bi] = std::move(z_new);
        }
        r = std::sqrt(r2);
        s = rho * std::sqrt(s2);
    }

    Eigen::VectorXd pack() const {
        Eigen::VectorXd v(state_size_);
        Eigen::Index at = 0;
        for (size_t bi = 0; bi < z_.size(); ++bi) {
            const Eigen::Index len = z_[bi].size();
            v.segment(at, len) = z_[bi].reshaped();
            v.segment(at + len, len) = u_[bi].reshaped();
            at += 2 * len;
        }
        return v;
    }

    void unpack(const Eigen::VectorXd &v) {
        Eigen::Index at = 0;
        for (size_t bi = 0; bi < z_.size(); ++bi) {
            const Eigen::Index len = z_[bi].size();
            z_[bi].reshaped() = v.segment(at, len);
            u_[bi].reshaped() = v.segment(at + len, len);
            at += 2 * len;
        }
    }

    const BlockLayout &layout_;
    const Relaxation &rel_;
    const SolverOptions &opt_;
    std::vector<Eigen::MatrixXd> x_, z_, u_;
    std::vector<double> y_;
    std::vector<double> acc_;
    Eigen::Index state_size_ = 0;
};

// Largest t in (0, inf] with m + t d PSD, given the Cholesky factor of m.
double max_step(const Eigen::LLT<Eigen::MatrixXd> &chol, const Eigen::MatrixXd &d) {
    if (d.rows() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::MatrixXd w = chol.matrixL().solve(d);
    w = chol.matrixL().solve(w.transpose()).eval();
    const double lmin = min_eigenvalue(0.5 * (w + w.transpose()));
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

// Primal-dual path following (HKM direction, Mehrotra predictor-corrector)
// on the pair
//   max b.y  s.t.  S = I + sum_c y_c A_c  PSD,
//   min tr(W) s.t. <A_c, W> = -b_c, W PSD,
// with S = X(y) kept exact so every iterate is a valid moment matrix.
class InteriorPointSolver {
   public:
    InteriorPointSolver(const BlockLayout &layout, const Relaxation &rel, const SolverOptions &opt)
        : layout_(layout), rel_(rel), opt_(opt), m_(static_cast<int>(layout.active.size())) {}

    SolverResult run() {
        const size_t nb = layout_.blocks.size();
        const size_t ncls = layout_.count.size();
        std::vector<double> y(ncls, 0.0);
        std::vector<Eigen::MatrixXd> w(nb), s(nb), s_inv(nb), dw(nb), ds(nb), k(nb);
        double total_dim = 0.0;
        for (size_t b = 0; b < nb; ++b) {
            w[b] = layout_.identity(layout_.blocks[b]);
            s[b] = w[b];
            total_dim += static_cast<double>(w[b].rows());
        }
        std::vector<double> b_vec(ncls);
        for (size_t c = 0; c < ncls; ++c) {
            b_vec[c] = rel_.objective[c];
        }
        const double b_norm = std::sqrt(std::inner_product(b_vec.begin(), b_vec.end(), b_vec.begin(), 0.0));

        SolverResult out;
        std::vector<double> aw(ncls), rhs_full(ncls), dy(ncls);
        Eigen::MatrixXd schur(m_, m_);
        std::vector<Eigen::LLT<Eigen::MatrixXd>> chol_w(nb), chol_s(nb);
        double pinf = 0.0;
        double rel_gap = 0.0;
        for (int iter = 1; iter <= opt_.max_ipm_iters; ++iter) {
            out.iterations = iter;
            // Residual of the dual constraints and the duality gap.
            layout_.adjoint(w, aw);
            double pinf2 = 0.0;
            for (int c : layout_.active) {
                const double r = -b_vec[c] - aw[c];
                pinf2 += r * r;
            }
            pinf = std::sqrt(pinf2) / (1.0 + b_norm);
            double gap = 0.0;
            for (size_t b = 0; b < nb; ++b) {
                gap += w[b].cwiseProduct(s[b]).sum();
            }
            double pobj = rel_.constant;
            for (size_t c = 0; c < ncls; ++c) {
                pobj += b_vec[c] * y[c];
            }
            rel_gap = gap / (1.0 + std::abs(pobj));
            if (pinf <= opt_.tol && rel_gap <= opt_.tol) {
                out.converged = true;
                break;
            }
            const double mu = gap / total_dim;

            bool ok = true;
            for (size_t b = 0; b < nb; ++b) {
                chol_s[b].compute(s[b]);
                chol_w[b].compute(w[b]);
                if (chol_s[b].info() != Eigen::Success || chol_w[b].info() != Eigen::Success) {
                    ok = false;
                    break;
                }
                s_inv[b] = chol_s[b].solve(Eigen::MatrixXd::Identity(s[b].rows(), s[b].cols()));
                s_inv[b] = 0.5 * (s_inv[b] + s_inv[b].transpose()).eval();
            }
            if (!ok) {
                break;
            }
            assemble_schur(w, s_inv, schur);
            Eigen::LLT<Eigen::MatrixXd> chol_m(schur);
            if (chol_m.info() != Eigen::Success) {
                break;
            }

            // Predictor (sigma = 0), then Mehrotra corrector.
            auto direction = [&](double sigma_mu, bool corrector) {
                for (size_t b = 0; b < nb; ++b) {
                    k[b] = sigma_mu * s_inv[b];
                    if (corrector) {
                        k[b] -= dw[b] * ds[b] * s_inv[b];
                    }
                }
                layout_.adjoint(k, rhs_full);
                Eigen::VectorXd rhs(m_);
                for (int i = 0; i < m_; ++i) {
                    const int c = layout_.active[i];
                    rhs(i) = b_vec[c] + rhs_full[c];
                }
                const Eigen::VectorXd sol = chol_m.solve(rhs);
                std::fill(dy.begin(), dy.end(), 0.0);
                for (int i = 0; i < m_; ++i) {
                    dy[layout_.active[i]] = sol(i);
                }
                for (size_t b = 0; b < nb; ++b) {
                    layout_.build(layout_.blocks[b], dy, ds[b]);
                    ds[b].diagonal().setZero();
                    Eigen::MatrixXd next = k[b] - w[b] - w[b] * ds[b] * s_inv[b];
                    dw[b] = 0.5 * (next + next.transpose());
                }
            };
            direction(0.0, false);
            double ap = 1.0;
            double ad = 1.0;
            for (size_t b = 0; b < nb; ++b) {
                ap = std::min(ap, max_step(chol_w[b], dw[b]));
                ad = std::min(ad, max_step(chol_s[b], ds[b]));
            }
            double pred_gap = 0.0;
            for (size_t b = 0; b < nb; ++b) {
                pred_gap += (w[b] + ap * dw[b]).cwiseProduct(s[b] + ad * ds[b]).sum();
            }
            const double sigma = std::min(1.0, std::pow(std::max(pred_gap, 0.0) / gap, 3.0));
            direction(sigma * mu, true);

            ap = std::numeric_limits<double>::infinity();
            ad = std::numeric_limits<double>::infinity();
            for (size_t b = 0; b < nb; ++b) {
                ap = std::min(ap, max_step(chol_w[b], dw[b]));
                ad = std::min(ad, max_step(chol_s[b], ds[b]));
            }
            constexpr double kFraction = 0.95;
            ap = std::min(1.0, kFraction * ap);
            ad = std::min(1.0, kFraction * ad);
            for (size_t b = 0; b < nb; ++b) {
                w[b] += ap * dw[b];
            }
            for (size_t c = 0; c < ncls; ++c) {
                y[c] += ad * dy[c];
            }
            for (size_t b = 0; b < nb; ++b) {
                layout_.build(layout_.blocks[b], y, s[b]);
            }
        }
        out.y = std::move(y);
        out.dual = std::move(w);
        out.primal_residual = pinf;
        out.dual_residual = rel_gap;
        return out;
    }

   private:
    // M_ij = tr(A_i W A_j S^-1), accumulated member by member. The class
    // matrices are sparse (a handful of symmetric entry pairs each), so this
    // beats forming W A_j S^-1 densely.
    void assemble_schur(const std::vector<Eigen::MatrixXd> &w, const std::vector<Eigen::MatrixXd> &s_inv,
                        Eigen::MatrixXd &out) const {
        out.setZero();
        for (size_t bi = 0; bi < layout_.blocks.size(); ++bi) {
            const Block &blk = layout_.blocks[bi];
            const Eigen::MatrixXd &x = w[bi];
            const Eigen::MatrixXd &si = s_inv[bi];
            const size_t ne = blk.cls.size();
            for (size_t p = 0; p < ne; ++p) {
                const int a = blk.la[p];
                const int b = blk.lb[p];
                const int cp = layout_.slot[blk.cls[p]];
                for (size_t q = 0; q <= p; ++q) {
                    const int c = blk.la[q];
                    const int d = blk.lb[q];
                    double term = x(b, c) * si(d, a) + x(b, d) * si(c, a) + x(a, c) * si(d, b) + x(a, d) * si(c, b);
                    term *= blk.sign[p] * blk.sign[q];
                    const int cq = layout_.slot[blk.cls[q]];
                    if (cp == cq) {
                        out(cp, cp) += (p == q) ? term : 2.0 * term;
                    } else if (cp > cq) {
                        out(cp, cq) += term;
                    } else {
                        out(cq, cp) += term;
                    }
                }
            }
        }
    }

    const BlockLayout &layout_;
    const Relaxation &rel_;
    const SolverOptions &opt_;
    int m_;
};

}  // namespace

const char *to_string(SolverMethod method) {
    switch (method) {
        case SolverMethod::kAuto:
            return "auto";
        case SolverMethod::kInteriorPoint:
            return "interior-point";
        case SolverMethod::kAdmm:
            return "admm";
    }
    return "unknown";
}

std::optional<int> ConstraintClasses::find(const PauliString &label) const {
    auto it = index.find(label);
    if (it == index.end()) {
        return std::nullopt;
    }
    return it->second;
}

Relaxation build_relaxation(const WeightedGraph &g) {
    Relaxation rel;
    rel.graph = g;
    ConstraintClasses &cc = rel.constraints;
    cc.num_qubits = g.num_vertices();
    if (cc.num_qubits == 0) {
        cc.basis.push_back(PauliString::identity(0));
        return rel;
    }
    cc.basis = enumerate_basis(cc.num_qubits, 2);
    const int dim = static_cast<int>(cc.basis.size());
    for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
            const PhasedPauli prod = multiply(cc.basis[a], cc.basis[b]);
            if (!prod.is_real()) {
                cc.zero_entries.emplace_back(a, b);
                continue;
            }
            auto [it, inserted] = cc.index.try_emplace(prod.op, static_cast<int>(cc.classes.size()));
            if (inserted) {
                cc.classes.push_back(EntryClass{prod.op, {}});
            }
            cc.classes[it->second].members.push_back(ClassMember{a, b, prod.sign()});
        }
    }

    rel.objective.assign(cc.classes.size(), 0.0);
    for (const Edge &e : g.edges()) {
        rel.constant += e.w / 2.0;
        const EdgeTerms t = edge_terms(rel, e);
        rel.objective[t.xx] += e.w / 2.0;
        rel.objective[t.yy] -= e.w / 2.0;
        rel.objective[t.zz] += e.w / 2.0;
    }
    return rel;
}

std::vector<double> MomentSolution::g_clipped() const {
    std::vector<double> out(g.size());
    std::transform(g.begin(), g.end(), out.begin(), [](double v) { return std::clamp(v, -1.0, 1.0); });
    return out;
}

std::optional<int> MomentSolution::edge_position(int a, int b) const {
    if (a > b) {
        std::swap(a, b);
    }
    for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].u == a && edges[k].v == b) {
            return static_cast<int>(k);
        }
    }
    return std::nullopt;
}

MomentSolution solve(const WeightedGraph &g, const SolverOptions &options) {
    if (g.num_vertices() > options.max_qubits) {
        throw SizeLimitError("instance has " + std::to_string(g.num_vertices()) + " vertices; solver cap is " +
                             std::to_string(options.max_qubits));
    }
    auto rel = std::make_shared<Relaxation>(build_relaxation(g));
    MomentSolution sol;
    sol.relaxation = rel;
    sol.edges = g.edges();

    if (g.num_edges() == 0) {
        // The maximally mixed moments are optimal for the zero objective.
        sol.class_values.assign(rel->constraints.classes.size(), 0.0);
        sol.converged = true;
        sol.certified = options.certified;
        sol.method = SolverMethod::kInteriorPoint;
    } else {
        const BlockLayout layout(rel->constraints, options.symmetry_reduction);
        SolverMethod method = options.method;
        if (method == SolverMethod::kAuto) {
            method = static_cast<int>(layout.active.size()) <= options.interior_point_class_limit
                         ? SolverMethod::kInteriorPoint
                         : SolverMethod::kAdmm;
        }
        SolverResult res = method == SolverMethod::kInteriorPoint
                               ? InteriorPointSolver(layout, *rel, options).run()
                               : AdmmSolver(layout, *rel, options).run();
        sol.method = method;
        sol.iterations = res.iterations;
        sol.converged = res.converged;
        sol.primal_residual = res.primal_residual;
        sol.dual_residual = res.dual_residual;

        // Shrink toward the identity until the moment matrix is PSD.
        Eigen::MatrixXd blk;
        double lmin = 1.0;
        for (const Block &b : layout.blocks) {
            layout.build(b, res.y, blk);
            lmin = std::min(lmin, min_eigenvalue(blk));
        }
        if (lmin < 0.0) {
            const double scale = 1.0 / (1.0 - lmin);
            for (double &v : res.y) v *= scale;
            lmin = 1.0;
            for (const Block &b : layout.blocks) {
                layout.build(b, res.y, blk);
                lmin = std::min(lmin, min_eigenvalue(blk));
            }
        }
        sol.min_eigenvalue = lmin;
        sol.certified_bound = dual_bound(layout, *rel, std::move(res.dual));
        sol.class_values = std::move(res.y);
        sol.certified = options.certified && sol.converged;
    }
    sol.gamma = assemble_gamma(rel->constraints, sol.class_values);
    fill_edge_values(sol);
    sol.gap = sol.certified_bound - sol.u;
    return sol;
}

double pseudo_expectation(const MomentSolution &sol, const PauliString &p) {
    const ConstraintClasses &cc = sol.relaxation->constraints;
    if (p.num_qubits != cc.num_qubits) {
        throw std::invalid_argument("pseudo_expectation: qubit count mismatch");
    }
    if (p.weight() > 4) {
        throw std::invalid_argument("pseudo_expectation: " + p.to_string() + " is not a product of two basis elements");
    }
    if (p.is_identity()) {
        return 1.0;
    }
    const auto c = cc.find(p);
    if (!c) {
        throw std::invalid_argument("pseudo_expectation: " + p.to_string() + " is not a product of two basis elements");
    }
    return sol.class_values[*c];
}

MomentSolution bipartite_transform(const MomentSolution &sol, const std::vector<int> &part) {
    const ConstraintClasses &cc = sol.relaxation->constraints;
    std::uint64_t mask = 0;
    for (int v : part) {
        if (v < 0 || v >= cc.num_qubits) {
            throw std::invalid_argument("bipartite_transform: vertex " + std::to_string(v) + " out of range");
        }
        mask |= std::uint64_t{1} << v;
    }
    for (const Edge &e : sol.edges) {
        const bool in_u = (mask >> e.u) & 1u;
        const bool in_v = (mask >> e.v) & 1u;
        if (in_u == in_v) {
            throw std::invalid_argument("bipartite_transform: edge " + std::to_string(e.u) + "-" +
                                        std::to_string(e.v) + " does not cross the given part");
        }
    }
    // Conjugating by Y flips X and Z but not Y on each vertex in the part.
    auto sign = [mask](const PauliString &p) { return (std::popcount((p.x ^ p.z) & mask) & 1) ? -1.0 : 1.0; };

    MomentSolution out = sol;
    std::vector<double> row_sign(cc.basis.size());
    for (size_t a = 0; a < cc.basis.size(); ++a) {
        row_sign[a] = sign(cc.basis[a]);
    }
    const auto dim = static_cast<Eigen::Index>(cc.basis.size());
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            out.gamma(a, b) = row_sign[a] * row_sign[b] * sol.gamma(a, b);
        }
    }
    for (size_t c = 0; c < cc.classes.size(); ++c) {
        out.class_values[c] = sign(cc.classes[c].label) * sol.class_values[c];
    }
    fill_edge_values(out);
    // The dual certificate belongs to the original objective.
    out.certified = false;
    out.certified_bound = 0.0;
    out.gap = 0.0;
    return out;
}

bool ConstraintReport::ok(double tol) const {
    return max_diagonal_error <= tol && max_asymmetry <= tol && max_class_spread <= tol && max_zero_entry <= tol &&
           min_eigenvalue >= -tol;
}

ConstraintReport check_constraints(const MomentSolution &sol) {
    const ConstraintClasses &cc = sol.relaxation->constraints;
    const Eigen::MatrixXd &gm = sol.gamma;
    ConstraintReport rep;
    rep.max_diagonal_error = (gm.diagonal().array() - 1.0).abs().maxCoeff();
    rep.max_asymmetry = (gm - gm.transpose()).cwiseAbs().maxCoeff();
    for (size_t c = 0; c < cc.classes.size(); ++c) {
        const auto &members = cc.classes[c].members;
        const double ref = members.front().sign * gm(members.front().a, members.front().b);
        for (const ClassMember &m : members) {
            rep.max_class_spread = std::max(rep.max_class_spread, std::abs(m.sign * gm(m.a, m.b) - ref));
        }
    }
    for (const auto &[a, b] : cc.zero_entries) {
        rep.max_zero_entry = std::max({rep.max_zero_entry, std::abs(gm(a, b)), std::abs(gm(b, a))});
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gm + gm.transpose()), Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues()(0);
    return rep;
}

nlohmann::json to_json(const MomentSolution &sol) {
    nlohmann::json g = nlohmann::json::object();
    nlohmann::json q = nlohmann::json::object();
    for (size_t k = 0; k < sol.edges.size(); ++k) {
        const std::string key = std::to_string(sol.edges[k].u) + "-" + std::to_string(sol.edges[k].v);
        g[key] = sol.g[k];
        q[key] = sol.q[k];
    }
    nlohmann::json out = {
        {"g", g},
        {"q", q},
        {"u", sol.u},
        {"gap", sol.gap},
        {"certified", sol.certified},
        {"converged", sol.converged},
        {"method", to_string(sol.method)},
        {"iterations", sol.iterations},
        {"primal_residual", sol.primal_residual},
        {"dual_residual", sol.dual_residual},
        {"min_eigenvalue", sol.min_eigenvalue},
    };
    if (sol.certified) {
        out["u_certified"] = sol.certified_bound;
    }
    return out;
}

}  // namespace epr

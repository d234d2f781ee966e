#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "dagrec/graph.hpp"
#include "dagrec/separation.hpp"

namespace dagrec {

class oracle_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Named sample matrix feeding the statistical test.
struct Dataset {
    std::vector<std::string> columns;
    Eigen::MatrixXd rows; // one sample per row

    std::size_t n() const { return static_cast<std::size_t>(rows.rows()); }

    void validate() const {
        detail::check_labels(columns);
        if (rows.cols() != static_cast<Eigen::Index>(columns.size()))
            throw oracle_error("row width does not match column count");
        if (rows.rows() < 1) throw oracle_error("dataset has no rows");
    }
};

struct OracleStats {
    std::size_t queries_total = 0;
    std::map<std::size_t, std::size_t> queries_by_conditioning_size;
};

// Answers "is x independent of y given z" over a fixed variable set.
// Implementations must be symmetric in x, y and deterministic.
class IndependenceOracle {
public:
    virtual ~IndependenceOracle() = default;
    virtual bool is_independent(int x, int y, const NodeSet& z) const = 0;
    virtual std::size_t variable_count() const = 0;
};

// Answers from d-separation in a known ground-truth dag.
class PerfectOracle final : public IndependenceOracle {
public:
    explicit PerfectOracle(Dag truth) : truth_(std::move(truth)) { truth_.validate(); }

    bool is_independent(int x, int y, const NodeSet& z) const override {
        return d_separated(truth_, SeparationQuery{x, y, z});
    }
    std::size_t variable_count() const override { return truth_.size(); }

    const Dag& truth() const { return truth_; }

private:
    Dag truth_;
};

// Fisher-z test of vanishing partial correlation: r is read off the
// conditional covariance of (x, y) given z (Schur complement of the z-block
// of the correlation matrix), the statistic is sqrt(n - |z| - 3) * atanh(r),
// compared two-sided against N(0,1). Perfectly correlated x, y give an
// infinite statistic and answer "dependent"; a degenerate conditioning set
// (collinear z, or an endpoint determined by z) is an error instead of a
// silent independence.
class FisherZOracle final : public IndependenceOracle {
public:
    FisherZOracle(const Dataset& data, double alpha) : alpha_(alpha) {
        data.validate();
        if (!(alpha > 0.0 && alpha < 1.0)) throw oracle_error("alpha must be in (0,1)");
        n_ = data.n();
        const Eigen::Index p = data.rows.cols();
        Eigen::MatrixXd centered = data.rows.rowwise() - data.rows.colwise().mean();
        Eigen::MatrixXd cov = centered.transpose() * centered / double(n_ - 1);
        corr_.resize(p, p);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index j = 0; j < p; ++j) {
                double d = std::sqrt(cov(i, i) * cov(j, j));
                if (d <= 0.0 || !std::isfinite(d))
                    throw oracle_error("constant or non-finite column: " + data.columns[i]);
                corr_(i, j) = cov(i, j) / d;
            }
    }

    bool is_independent(int x, int y, const NodeSet& z) const override {
        if (n_ <= z.size() + 3)
            throw oracle_error("insufficient samples for conditioning size " +
                               std::to_string(z.size()));
        const double r = partial_correlation(x, y, z);
        if (std::abs(r) >= 1.0) return false; // infinite statistic
        const double stat = std::sqrt(double(n_ - z.size() - 3)) * std::atanh(r);
        // |stat| <= two-sided quantile(alpha)  <=>  p-value >= alpha
        const double pvalue = std::erfc(std::abs(stat) / std::sqrt(2.0));
        return pvalue >= alpha_;
    }

    std::size_t variable_count() const override {
        return static_cast<std::size_t>(corr_.cols());
    }

    double partial_correlation(int x, int y, const NodeSet& z) const {
        if (z.empty()) return corr_(x, y);
        const std::vector<int> zs(z.begin(), z.end());
        const Eigen::Index k = static_cast<Eigen::Index>(zs.size());
        Eigen::MatrixXd czz(k, k);
        Eigen::MatrixXd cvz(2, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            cvz(0, i) = corr_(x, zs[i]);
            cvz(1, i) = corr_(y, zs[i]);
            for (Eigen::Index j = 0; j < k; ++j) czz(i, j) = corr_(zs[i], zs[j]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(czz);
        if (!lu.isInvertible())
            throw oracle_error("singular correlation submatrix in query");
        Eigen::Matrix2d cond;
        cond << corr_(x, x), corr_(x, y), corr_(y, x), corr_(y, y);
        cond -= (cvz * lu.solve(cvz.transpose())).eval();
        if (cond(0, 0) < 1e-12 || cond(1, 1) < 1e-12)
            throw oracle_error("singular correlation submatrix in query");
        return std::clamp(cond(0, 1) / std::sqrt(cond(0, 0) * cond(1, 1)), -1.0, 1.0);
    }

private:
    double alpha_;
    std::size_t n_;
    Eigen::MatrixXd corr_;
};

// Caches answers under a canonical key and counts distinct queries; never
// changes the inner oracle's answers.
class CountingOracle final : public IndependenceOracle {
public:
    explicit CountingOracle(std::shared_ptr<const IndependenceOracle> inner)
        : inner_(std::move(inner)) {
        if (!inner_) throw oracle_error("null inner oracle");
    }

    bool is_independent(int x, int y, const NodeSet& z) const override {
        const auto key = std::make_pair(unordered(x, y), z);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        const bool ans = inner_->is_independent(x, y, z);
        std::lock_guard<std::mutex> lock(mu_);
        if (cache_.emplace(key, ans).second) {
            ++stats_.queries_total;
            ++stats_.queries_by_conditioning_size[z.size()];
        }
        return ans;
    }

    std::size_t variable_count() const override { return inner_->variable_count(); }

    OracleStats stats() const {
        std::lock_guard<std::mutex> lock(mu_);
        return stats_;
    }

private:
    std::shared_ptr<const IndependenceOracle> inner_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<Edge, NodeSet>, bool> cache_;
    mutable OracleStats stats_;
};

} // namespace dagrec

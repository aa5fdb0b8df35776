#include "relph/ml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "relph/errors.hpp"
#include "relph/random.hpp"

namespace relph {

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

void shuffle(std::vector<int>& xs, Rng& rng) {
    for (std::size_t i = xs.size(); i > 1; --i)
        std::swap(xs[i - 1], xs[rng.below(i)]);
}

}  // namespace

SmoteResult smote(const Matrix& X, const std::vector<int>& y, double target_ratio,
                  int k_neighbors, std::uint64_t seed) {
    if (y.size() != X.rows) throw InvalidInputError("smote: label/row count mismatch");
    if (!(target_ratio > 0.0)) throw InvalidInputError("smote: target_ratio must be positive");
    std::vector<int> idx0, idx1;
    for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 0 ? idx0 : idx1).push_back(i);
    SmoteResult out{X, y};
    if (idx0.size() == idx1.size()) return out;

    const bool minority_is_1 = idx1.size() < idx0.size();
    const auto& minority = minority_is_1 ? idx1 : idx0;
    const auto& majority = minority_is_1 ? idx0 : idx1;
    const int minority_label = minority_is_1 ? 1 : 0;
    const std::size_t target =
        static_cast<std::size_t>(std::llround(target_ratio * majority.size()));
    if (minority.size() >= target) return out;
    const std::size_t needed = target - minority.size();

    if (static_cast<int>(minority.size()) < k_neighbors + 1)
        throw InvalidInputError("smote: minority class has " +
                                std::to_string(minority.size()) + " samples, need at least " +
                                std::to_string(k_neighbors + 1));

    // k nearest minority neighbors per minority sample, ties by index.
    const std::size_t d = X.cols;
    std::vector<std::vector<int>> nns(minority.size());
    for (std::size_t a = 0; a < minority.size(); ++a) {
        std::vector<std::pair<double, int>> cand;
        for (std::size_t b = 0; b < minority.size(); ++b) {
            if (a == b) continue;
            cand.emplace_back(sq_dist(X.row(minority[a]), X.row(minority[b]), d),
                              minority[b]);
        }
        std::sort(cand.begin(), cand.end());
        for (int k = 0; k < k_neighbors; ++k) nns[a].push_back(cand[k].second);
    }

    Rng rng(mix_seed(seed, 0x534d4f54));
    out.X.rows += needed;
    out.X.v.reserve(out.X.rows * d);
    for (std::size_t s = 0; s < needed; ++s) {
        const std::size_t a = s % minority.size();
        const double* base = X.row(minority[a]);
        const double* nn = X.row(nns[a][rng.below(nns[a].size())]);
        const double u = rng.uniform01();
        for (std::size_t j = 0; j < d; ++j)
            out.X.v.push_back(base[j] + u * (nn[j] - base[j]));
        out.y.push_back(minority_label);
    }
    return out;
}

double svm_decision(const SvmModel& model, const double* x, std::size_t d) {
    double s = model.bias;
    for (std::size_t j = 0; j < d && j < model.w.size(); ++j) s += model.w[j] * x[j];
    return s;
}

SvmModel svm_train(const Matrix& X, const std::vector<int>& y, double c_param,
                   std::uint64_t seed) {
    if (y.size() != X.rows) throw InvalidInputError("svm_train: label/row count mismatch");
    const std::size_t n = X.rows;
    const std::size_t d = X.cols;
    bool saw0 = false, saw1 = false;
    for (int label : y) (label == 0 ? saw0 : saw1) = true;
    if (!saw0 || !saw1)
        throw InvalidInputError("svm_train: training data contains a single class");

    // Pegasos with the bias folded in as an extra constant feature.
    const double lambda = 1.0 / (c_param * static_cast<double>(n));
    const int epochs = 100;
    std::vector<double> w(d + 1, 0.0);
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);

    Rng rng(mix_seed(seed, 0x53564d));
    std::uint64_t t = 0;
    for (int e = 0; e < epochs; ++e) {
        shuffle(order, rng);
        for (std::size_t oi = 0; oi < n; ++oi) {
            ++t;
            const int i = order[oi];
            const double* x = X.row(i);
            const double s = (y[i] == 1) ? 1.0 : -1.0;
            double margin = w[d];
            for (std::size_t j = 0; j < d; ++j) margin += w[j] * x[j];
            margin *= s;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double keep = 1.0 - eta * lambda;
            for (auto& wj : w) wj *= keep;
            if (margin < 1.0) {
                for (std::size_t j = 0; j < d; ++j) w[j] += eta * s * x[j];
                w[d] += eta * s;
            }
        }
    }
    SvmModel model;
    model.bias = w[d];
    w.resize(d);
    model.w = std::move(w);
    return model;
}

std::vector<int> svm_predict(const SvmModel& model, const Matrix& X) {
    std::vector<int> out(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i)
        out[i] = svm_decision(model, X.row(i), X.cols) > 0.0 ? 1 : 0;
    return out;
}

std::vector<std::vector<int>> stratified_kfold(const std::vector<int>& y, int k,
                                               std::uint64_t seed) {
    if (k < 2) throw InvalidInputError("stratified_kfold: k must be >= 2");
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
    for (const auto& [label, idx] : by_class)
        if (static_cast<int>(idx.size()) < k)
            throw InvalidInputError("stratified_kfold: class " + std::to_string(label) +
                                    " has fewer than k samples");
    std::vector<std::vector<int>> folds(k);
    // Rotate where each class starts dealing so leftover samples land in
    // different folds and the total fold sizes stay balanced.
    std::size_t offset = 0;
    for (auto& [label, idx] : by_class) {
        Rng rng(mix_seed(seed, 0xF01D + static_cast<std::uint64_t>(label)));
        shuffle(idx, rng);
        for (std::size_t i = 0; i < idx.size(); ++i)
            folds[(i + offset) % k].push_back(idx[i]);
        offset = (offset + idx.size()) % k;
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

std::pair<std::vector<int>, std::vector<int>> stratified_split(const std::vector<int>& y,
                                                               double test_fraction,
                                                               std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw InvalidInputError("stratified_split: test_fraction must be in (0,1)");
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
    std::vector<int> train, test;
    for (auto& [label, idx] : by_class) {
        Rng rng(mix_seed(seed, 0x5EA7 + static_cast<std::uint64_t>(label)));
        shuffle(idx, rng);
        const std::size_t n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(idx.size())));
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_test ? test : train).push_back(idx[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {train, test};
}

namespace {

double compute_inertia(const Matrix& X, const Matrix& centroids,
                       const std::vector<int>& assign) {
    double total = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i)
        total += sq_dist(X.row(i), centroids.row(assign[i]), X.cols);
    return total;
}

ClusterResult kmeans_once(const Matrix& X, int k, Rng& rng) {
    const std::size_t n = X.rows;
    const std::size_t d = X.cols;

    // k-means++ seeding.
    Matrix centroids = Matrix::zeros(k, d);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    {
        const std::size_t first = rng.below(n);
        std::copy_n(X.row(first), d, centroids.row(0));
    }
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sq_dist(X.row(i), centroids.row(c - 1), d));
            total += d2[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double r = rng.uniform01() * total;
            double cum = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum >= r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.below(n);
        }
        std::copy_n(X.row(pick), d, centroids.row(c));
    }

    std::vector<int> assign(n, 0);
    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 300; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (int c = 0; c < k; ++c) {
                const double dist = sq_dist(X.row(i), centroids.row(c), d);
                if (dist < best) {
                    best = dist;
                    best_c = c;
                }
            }
            assign[i] = best_c;
        }
        // Recompute centroids; an empty cluster steals the point farthest
        // from its current centroid.
        Matrix sums = Matrix::zeros(k, d);
        std::vector<int> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assign[i]];
            const double* x = X.row(i);
            double* s = sums.row(assign[i]);
            for (std::size_t j = 0; j < d; ++j) s[j] += x[j];
        }
        std::set<std::size_t> stolen;
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            double worst = -1.0;
            std::size_t worst_i = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (stolen.count(i) || counts[assign[i]] <= 1) continue;
                const double dist = sq_dist(X.row(i), centroids.row(assign[i]), d);
                if (dist > worst) {
                    worst = dist;
                    worst_i = i;
                }
            }
            stolen.insert(worst_i);
            --counts[assign[worst_i]];
            const double* x = X.row(worst_i);
            double* old = sums.row(assign[worst_i]);
            for (std::size_t j = 0; j < d; ++j) old[j] -= x[j];
            assign[worst_i] = c;
            counts[c] = 1;
            double* s = sums.row(c);
            for (std::size_t j = 0; j < d; ++j) s[j] = x[j];
        }
        for (int c = 0; c < k; ++c)
            for (std::size_t j = 0; j < d; ++j)
                centroids.at(c, j) = sums.at(c, j) / static_cast<double>(counts[c]);

        const double inertia = compute_inertia(X, centroids, assign);
        if (std::isfinite(prev_inertia) && prev_inertia - inertia <= 1e-6 * prev_inertia) {
            prev_inertia = inertia;
            break;
        }
        prev_inertia = inertia;
    }

    ClusterResult res;
    res.assignments = std::move(assign);
    res.centroids = std::move(centroids);
    res.inertia = prev_inertia;
    return res;
}

}  // namespace

ClusterResult kmeans(const Matrix& X, int k, std::uint64_t seed, int n_init) {
    if (k < 1) throw InvalidInputError("kmeans: k must be positive");
    if (X.rows < static_cast<std::size_t>(k))
        throw InvalidInputError("kmeans: fewer points (" + std::to_string(X.rows) +
                                ") than clusters (" + std::to_string(k) + ")");
    ClusterResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int init = 0; init < std::max(1, n_init); ++init) {
        Rng rng(mix_seed(seed, 0x4b4d45414e + static_cast<std::uint64_t>(init)));
        ClusterResult res = kmeans_once(X, k, rng);
        if (res.inertia < best.inertia) best = std::move(res);
    }
    return best;
}

std::map<std::string, double> cluster_purity(const std::vector<int>& assignments,
                                             const std::vector<std::string>& groups) {
    if (assignments.size() != groups.size())
        throw InvalidInputError("cluster_purity: assignment/group count mismatch");
    std::map<std::string, std::map<int, int>> tally;
    std::map<std::string, int> sizes;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (groups[i].empty())
            throw InvalidInputError("cluster_purity: row " + std::to_string(i) +
                                    " has an empty group key");
        ++tally[groups[i]][assignments[i]];
        ++sizes[groups[i]];
    }
    std::map<std::string, double> purity;
    for (const auto& [group, counts] : tally) {
        int modal = 0;
        for (const auto& [cluster, count] : counts) modal = std::max(modal, count);
        purity[group] = static_cast<double>(modal) / static_cast<double>(sizes[group]);
    }
    return purity;
}

LabeledPointCloud relabel_noise(const LabeledPointCloud& cloud, double fraction,
                                const std::vector<Species>& species_set,
                                std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw InvalidInputError("relabel_noise: fraction must be in [0,1]");
    const std::vector<Species> allowed{Species::N, Species::M1, Species::M2};
    for (Species s : species_set)
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end())
            throw InvalidInputError("relabel_noise: species " + to_string(s) +
                                    " cannot be relabeled (only N, M1, M2)");

    LabeledPointCloud out = cloud;
    Rng rng(mix_seed(seed, 0x0e1abe1));
    for (Species s : allowed) {
        if (std::find(species_set.begin(), species_set.end(), s) == species_set.end())
            continue;
        std::vector<int> idx;
        for (std::size_t i = 0; i < cloud.labels.size(); ++i)
            if (cloud.labels[i] == s) idx.push_back(i);
        const std::size_t m = static_cast<std::size_t>(fraction * idx.size());
        shuffle(idx, rng);
        idx.resize(m);
        std::sort(idx.begin(), idx.end());
        std::vector<Species> others;
        for (Species o : allowed)
            if (o != s) others.push_back(o);
        for (int i : idx) {
            const Species target = others[rng.below(2)];
            out.labels[i] = target;
            if (target == Species::N)
                out.omega[i] = std::numeric_limits<double>::quiet_NaN();
            else if (target == Species::M1)
                out.omega[i] = rng.uniform(0.0, 0.5);
            else
                out.omega[i] = rng.uniform(0.5, 1.0);
        }
    }
    out.validate();
    return out;
}

void Standardizer::fit(const Matrix& X) {
    mean.assign(X.cols, 0.0);
    stddev.assign(X.cols, 0.0);
    if (X.rows == 0) return;
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) mean[j] += X.at(i, j);
    for (auto& m : mean) m /= static_cast<double>(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) {
            const double diff = X.at(i, j) - mean[j];
            stddev[j] += diff * diff;
        }
    for (auto& s : stddev) s = std::sqrt(s / static_cast<double>(X.rows));
}

Matrix Standardizer::transform(const Matrix& X) const {
    Matrix out = X;
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) {
            const double s = stddev[j] > 0.0 ? stddev[j] : 1.0;
            out.at(i, j) = (X.at(i, j) - mean[j]) / s;
        }
    return out;
}

namespace {

Matrix take_rows(const Matrix& X, const std::vector<int>& idx) {
    Matrix out = Matrix::zeros(idx.size(), X.cols);
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy_n(X.row(idx[i]), X.cols, out.row(i));
    return out;
}

std::vector<int> take_labels(const std::vector<int>& y, const std::vector<int>& idx) {
    std::vector<int> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = y[idx[i]];
    return out;
}

double accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == pred[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

/// Standardize on the training rows, oversample, train, score on the eval rows.
double fit_and_score(const Matrix& Xtr, const std::vector<int>& ytr, const Matrix& Xev,
                     const std::vector<int>& yev, double c_param, double smote_ratio,
                     int smote_neighbors, std::uint64_t seed) {
    Standardizer scaler;
    scaler.fit(Xtr);
    Matrix Xs = scaler.transform(Xtr);
    std::vector<int> ys = ytr;
    std::size_t minority = std::min(
        static_cast<std::size_t>(std::count(ys.begin(), ys.end(), 0)),
        static_cast<std::size_t>(std::count(ys.begin(), ys.end(), 1)));
    const int k = std::min<std::size_t>(smote_neighbors, minority > 0 ? minority - 1 : 0);
    if (k >= 1) {
        auto res = smote(Xs, ys, smote_ratio, k, seed);
        Xs = std::move(res.X);
        ys = std::move(res.y);
    }
    const SvmModel model = svm_train(Xs, ys, c_param, seed);
    const Matrix Xe = scaler.transform(Xev);
    return accuracy(yev, svm_predict(model, Xe));
}

}  // namespace

ClassifyResult run_classification(const Matrix& X, const std::vector<int>& y,
                                  const ClassifyConfig& cfg) {
    ClassifyResult result;
    for (int split = 0; split < cfg.n_splits; ++split) {
        const std::uint64_t split_seed = cfg.base_seed + static_cast<std::uint64_t>(split);
        const auto [train, test] = stratified_split(y, cfg.test_fraction,
                                                    mix_seed(split_seed, 0xA));
        const Matrix Xtrain = take_rows(X, train);
        const std::vector<int> ytrain = take_labels(y, train);

        double best_c = cfg.c_grid.front();
        double best_score = -1.0;
        const auto folds = stratified_kfold(ytrain, cfg.cv_folds, mix_seed(split_seed, 0xB));
        for (double c_param : cfg.c_grid) {
            double total = 0.0;
            for (int f = 0; f < cfg.cv_folds; ++f) {
                std::vector<int> sub, val = folds[f];
                for (int g = 0; g < cfg.cv_folds; ++g)
                    if (g != f) sub.insert(sub.end(), folds[g].begin(), folds[g].end());
                std::sort(sub.begin(), sub.end());
                total += fit_and_score(take_rows(Xtrain, sub), take_labels(ytrain, sub),
                                       take_rows(Xtrain, val), take_labels(ytrain, val),
                                       c_param, cfg.smote_ratio, cfg.smote_neighbors,
                                       mix_seed(split_seed, 0xC0 + f));
            }
            const double score = total / cfg.cv_folds;
            if (score > best_score) {
                best_score = score;
                best_c = c_param;
            }
        }

        SplitOutcome outcome;
        outcome.chosen_c = best_c;
        outcome.accuracy = fit_and_score(Xtrain, ytrain, take_rows(X, test),
                                         take_labels(y, test), best_c, cfg.smote_ratio,
                                         cfg.smote_neighbors, mix_seed(split_seed, 0xD));
        result.splits.push_back(outcome);
    }
    std::vector<double> accs;
    for (const auto& s : result.splits) accs.push_back(s.accuracy);
    result.median_accuracy = median(std::move(accs));
    return result;
}

double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace relph

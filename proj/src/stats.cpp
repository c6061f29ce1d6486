#include "wearlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/textfmt.hpp"

using json = nlohmann::ordered_json;

namespace wearlab::stats {

namespace {

// Average ranks (1-based) with ties sharing their midrank.
std::vector<double> average_ranks(const std::vector<double>& values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double midrank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = midrank;
        i = j + 1;
    }
    return ranks;
}

void check_aligned(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) {
        throw DimensionError("scores and labels differ in length");
    }
    if (scores.empty()) throw EmptyDataError("no observations");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_aligned(scores, labels);
    std::size_t n_pos = 0, n_neg = 0;
    for (int y : labels) (y ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) {
        throw SingleClassError("AUROC needs both classes present");
    }
    auto ranks = average_ranks(scores);
    double rank_sum_pos = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) rank_sum_pos += ranks[i];
    }
    double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

double auprc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_aligned(scores, labels);
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += (y != 0);
    if (n_pos == 0) throw NoPositiveError("AUPRC needs at least one positive");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double ap = 0.0;
    std::size_t seen = 0, tp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t block_pos = labels[order[j]] ? 1 : 0;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) {
            ++j;
            block_pos += labels[order[j]] ? 1 : 0;
        }
        seen += j - i + 1;
        tp += block_pos;
        if (block_pos > 0) {
            double precision = static_cast<double>(tp) / static_cast<double>(seen);
            ap += precision * static_cast<double>(block_pos);
        }
        i = j + 1;
    }
    return ap / static_cast<double>(n_pos);
}

namespace {

template <typename Emit>
void sweep_thresholds(const std::vector<double>& scores, const std::vector<int>& labels,
                      Emit emit) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k <= j; ++k) (labels[order[k]] ? tp : fp) += 1;
        emit(tp, fp);
        i = j + 1;
    }
}

}  // namespace

std::vector<CurvePoint> roc_curve(const std::vector<double>& scores,
                                  const std::vector<int>& labels) {
    check_aligned(scores, labels);
    std::size_t n_pos = 0, n_neg = 0;
    for (int y : labels) (y ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) throw SingleClassError("ROC needs both classes");
    std::vector<CurvePoint> points = {{0.0, 0.0}};
    sweep_thresholds(scores, labels, [&](std::size_t tp, std::size_t fp) {
        points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                          static_cast<double>(tp) / static_cast<double>(n_pos)});
    });
    return points;
}

std::vector<CurvePoint> pr_curve(const std::vector<double>& scores,
                                 const std::vector<int>& labels) {
    check_aligned(scores, labels);
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += (y != 0);
    if (n_pos == 0) throw NoPositiveError("PR curve needs at least one positive");
    std::vector<CurvePoint> points;
    sweep_thresholds(scores, labels, [&](std::size_t tp, std::size_t fp) {
        points.push_back({static_cast<double>(tp) / static_cast<double>(n_pos),
                          static_cast<double>(tp) / static_cast<double>(tp + fp)});
    });
    return points;
}

std::string MetricResult::to_json() const {
    json j;
    j["name"] = name;
    j["estimate"] = estimate;
    j["ci_lower"] = ci_lower;
    j["ci_upper"] = ci_upper;
    j["iterations"] = iterations;
    j["seed"] = seed;
    return j.dump();
}

namespace {
constexpr int kRedrawCap = 100;

double percentile_of_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw EmptyDataError("no resample statistics");
    if (sorted.size() == 1) return sorted[0];
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}
}  // namespace

MetricResult bootstrap_ci(const std::string& name,
                          const std::function<double(const std::vector<std::size_t>&)>& stat,
                          std::size_t data_size, int iterations, std::uint64_t seed) {
    if (data_size == 0) throw EmptyDataError("bootstrap over empty data");
    if (iterations < 1) throw ValueError("bootstrap iterations must be >= 1");

    std::vector<std::size_t> identity(data_size);
    std::iota(identity.begin(), identity.end(), 0);
    MetricResult result;
    result.name = name;
    result.estimate = stat(identity);
    result.iterations = iterations;
    result.seed = seed;

    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(iterations));
    std::vector<std::size_t> indices(data_size);
    for (int b = 0; b < iterations; ++b) {
        Rng rng(seed, static_cast<std::uint64_t>(b));
        bool ok = false;
        for (int attempt = 0; attempt < kRedrawCap && !ok; ++attempt) {
            for (auto& idx : indices) idx = rng.next_below(data_size);
            try {
                draws.push_back(stat(indices));
                ok = true;
            } catch (const Error&) {
                // statistic undefined on this resample; redraw
            }
        }
        if (!ok) {
            throw ResampleExhaustionError("statistic undefined after " +
                                          std::to_string(kRedrawCap) +
                                          " redraws at iteration " + std::to_string(b));
        }
    }
    std::sort(draws.begin(), draws.end());
    result.ci_lower = percentile_of_sorted(draws, 0.025);
    result.ci_upper = percentile_of_sorted(draws, 0.975);
    return result;
}

MetricResult bootstrap_ci_values(const std::string& name,
                                 const std::function<double(const std::vector<double>&)>& stat,
                                 const std::vector<double>& data, int iterations,
                                 std::uint64_t seed) {
    std::vector<double> buffer(data.size());
    return bootstrap_ci(
        name,
        [&](const std::vector<std::size_t>& indices) {
            for (std::size_t i = 0; i < indices.size(); ++i) buffer[i] = data[indices[i]];
            return stat(buffer);
        },
        data.size(), iterations, seed);
}

double paired_bootstrap_test(
    const std::function<double(const std::vector<double>&, const std::vector<int>&)>& metric,
    const std::vector<double>& scores_a, const std::vector<double>& scores_b,
    const std::vector<int>& labels, int iterations, std::uint64_t seed) {
    if (scores_a.size() != scores_b.size() || scores_a.size() != labels.size()) {
        throw DimensionError("paired bootstrap needs aligned arrays");
    }
    if (labels.empty()) throw EmptyDataError("no observations");

    const double observed = metric(scores_a, labels) - metric(scores_b, labels);
    std::size_t n = labels.size();
    std::vector<double> ra(n), rb(n);
    std::vector<int> rl(n);
    int flips = 0;
    for (int b = 0; b < iterations; ++b) {
        Rng rng(seed, static_cast<std::uint64_t>(b));
        bool ok = false;
        for (int attempt = 0; attempt < kRedrawCap && !ok; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t idx = rng.next_below(n);
                ra[i] = scores_a[idx];
                rb[i] = scores_b[idx];
                rl[i] = labels[idx];
            }
            try {
                double diff = metric(ra, rl) - metric(rb, rl);
                if (diff * observed <= 0.0) ++flips;
                ok = true;
            } catch (const Error&) {
            }
        }
        if (!ok) {
            throw ResampleExhaustionError("metric undefined after redraw cap at iteration " +
                                          std::to_string(b));
        }
    }
    return static_cast<double>(flips + 1) / static_cast<double>(iterations + 1);
}

double wilcoxon_rank_sum_p(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || y.empty()) throw EmptySampleError("rank-sum sample empty");
    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    auto ranks = average_ranks(pooled);

    double w = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) w += ranks[i];

    double nx = static_cast<double>(x.size());
    double ny = static_cast<double>(y.size());
    double n = nx + ny;
    double mu = nx * (n + 1.0) / 2.0;

    // Tie correction: subtract sum(t^3 - t) over tie groups.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    double var = nx * ny / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) return 1.0;  // all values identical: no evidence of shift
    double z = (w - mu) / std::sqrt(var);
    return 2.0 * (1.0 - normal_cdf(std::abs(z)));
}

double wilcoxon_exact_p(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || y.empty()) throw EmptySampleError("rank-sum sample empty");
    std::size_t nx = x.size(), ny = y.size(), n = nx + ny;
    if (n > 14) throw ValueError("exact mode supports n_x + n_y <= 14");

    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    auto ranks = average_ranks(pooled);

    double w_obs = 0.0;
    for (std::size_t i = 0; i < nx; ++i) w_obs += ranks[i];
    double mu = static_cast<double>(nx) * (static_cast<double>(n) + 1.0) / 2.0;
    double dev_obs = std::abs(w_obs - mu);

    // Enumerate all subsets of size nx of the pooled ranks.
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(nx), true);
    std::sort(mask.begin(), mask.end());  // lexicographic start for next_permutation
    std::size_t total = 0, extreme = 0;
    do {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) w += ranks[i];
        }
        ++total;
        if (std::abs(w - mu) >= dev_obs - 1e-12) ++extreme;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
}

std::vector<double> benjamini_hochberg(const std::vector<double>& raw_p) {
    std::size_t m = raw_p.size();
    if (m == 0) return {};
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return raw_p[a] < raw_p[b]; });
    std::vector<double> adjusted(m, 0.0);
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        double candidate = raw_p[order[k]] * static_cast<double>(m) /
                           static_cast<double>(k + 1);
        running = std::min(running, candidate);
        adjusted[order[k]] = std::min(1.0, running);
    }
    return adjusted;
}

WilcoxonBhResult wilcoxon_bh(
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>& groups) {
    WilcoxonBhResult result;
    for (const auto& [x, y] : groups) {
        result.raw_p.push_back(wilcoxon_rank_sum_p(x, y));
    }
    result.adjusted_p = benjamini_hochberg(result.raw_p);
    return result;
}

// --- agreement ----------------------------------------------------------------

RatingTable parse_rating_csv(const std::string& text) {
    auto lines = split_lines(text);
    const std::string expected =
        "case_id,section,principle,rater,source,rating,elapsed_minutes";
    if (lines.empty() || lines[0] != expected) {
        throw SchemaError("ratings CSV header must be \"" + expected + "\"");
    }
    RatingTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        for (char c : lines[i]) {
            if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else if (c != '\r') {
                cell += c;
            }
        }
        cells.push_back(cell);
        if (cells.size() != 7) {
            throw SchemaError("ratings row " + std::to_string(i + 1) +
                              " has wrong cell count");
        }
        RatingRow row;
        row.case_id = cells[0];
        row.section = cells[1];
        row.principle = cells[2];
        row.rater = cells[3];
        row.source = cells[4];
        int rating = std::atoi(cells[5].c_str());
        if (rating < 1 || rating > 5) {
            throw OutOfRangeError("rating outside 1..5 at row " + std::to_string(i + 1));
        }
        row.rating = rating;
        if (!cells[6].empty()) row.elapsed_minutes = std::atof(cells[6].c_str());
        table.rows.push_back(std::move(row));
    }
    return table;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DimensionError("paired vectors differ in length");
    if (a.size() < 2) throw InsufficientPairsError("need at least 2 pairs");
    auto ra = average_ranks(a);
    auto rb = average_ranks(b);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= static_cast<double>(ra.size());
    mb /= static_cast<double>(rb.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        double dx = ra[i] - ma, dy = rb[i] - mb;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateVarianceError("constant ranks: Spearman undefined");
    }
    return sxy / std::sqrt(sxx * syy);
}

double weighted_kappa(const std::vector<int>& a, const std::vector<int>& b,
                      int categories) {
    if (a.size() != b.size()) throw DimensionError("paired vectors differ in length");
    if (a.size() < 2) throw InsufficientPairsError("need at least 2 pairs");
    const int k = categories;
    std::vector<std::vector<double>> observed(k, std::vector<double>(k, 0.0));
    std::vector<double> margin_a(k, 0.0), margin_b(k, 0.0);
    double n = static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1 || a[i] > k || b[i] < 1 || b[i] > k) {
            throw OutOfRangeError("rating outside 1.." + std::to_string(k));
        }
        observed[a[i] - 1][b[i] - 1] += 1.0;
        margin_a[a[i] - 1] += 1.0;
        margin_b[b[i] - 1] += 1.0;
    }
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            double weight = static_cast<double>((i - j) * (i - j));
            double expected = margin_a[i] * margin_b[j] / n;
            num += weight * observed[i][j];
            den += weight * expected;
        }
    }
    if (den == 0.0) {
        throw DegenerateVarianceError("no rating variation: kappa undefined");
    }
    return 1.0 - num / den;
}

double kendalls_w(const std::vector<std::vector<double>>& ratings) {
    std::size_t m = ratings.size();
    if (m < 2) throw InsufficientPairsError("Kendall's W needs >= 2 raters");
    std::size_t n = ratings[0].size();
    if (n < 2) throw InsufficientPairsError("Kendall's W needs >= 2 items");
    for (const auto& r : ratings) {
        if (r.size() != n) throw DimensionError("ragged rating matrix");
    }

    std::vector<double> rank_sums(n, 0.0);
    double tie_term = 0.0;  // sum over raters of sum(t^3 - t)
    for (const auto& r : ratings) {
        auto ranks = average_ranks(r);
        for (std::size_t i = 0; i < n; ++i) rank_sums[i] += ranks[i];
        std::vector<double> sorted = r;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
            double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    double md = static_cast<double>(m);
    double nd = static_cast<double>(n);
    double sum_sq = 0.0;
    for (double r : rank_sums) sum_sq += r * r;
    double numerator = 12.0 * sum_sq - 3.0 * md * md * nd * (nd + 1.0) * (nd + 1.0);
    double denominator = md * md * (nd * nd * nd - nd) - md * tie_term;
    if (denominator == 0.0) {
        throw DegenerateVarianceError("all items tied: Kendall's W undefined");
    }
    return numerator / denominator;
}

double icc31(const std::vector<std::vector<double>>& ratings) {
    std::size_t k = ratings.size();  // raters
    if (k < 2) throw InsufficientPairsError("ICC needs >= 2 raters");
    std::size_t n = ratings[0].size();  // items
    if (n < 2) throw InsufficientPairsError("ICC needs >= 2 items");
    for (const auto& r : ratings) {
        if (r.size() != n) throw DimensionError("ragged rating matrix");
    }
    double kd = static_cast<double>(k), nd = static_cast<double>(n);
    double grand = 0.0;
    for (const auto& r : ratings) {
        for (double v : r) grand += v;
    }
    grand /= kd * nd;

    std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            row_mean[i] += ratings[j][i] / kd;
            col_mean[j] += ratings[j][i] / nd;
        }
    }
    double ss_rows = 0.0, ss_cols = 0.0, ss_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ss_rows += kd * (row_mean[i] - grand) * (row_mean[i] - grand);
    }
    for (std::size_t j = 0; j < k; ++j) {
        ss_cols += nd * (col_mean[j] - grand) * (col_mean[j] - grand);
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            double resid = ratings[j][i] - row_mean[i] - col_mean[j] + grand;
            ss_err += resid * resid;
        }
    }
    double ms_rows = ss_rows / (nd - 1.0);
    double ms_err = ss_err / ((nd - 1.0) * (kd - 1.0));
    double denom = ms_rows + (kd - 1.0) * ms_err;
    if (denom == 0.0) {
        throw DegenerateVarianceError("no item variance: ICC undefined");
    }
    return (ms_rows - ms_err) / denom;
}

std::string AgreementReport::to_json() const {
    auto metric = [](const AgreementMetric& m) {
        json j;
        j["value"] = m.value;
        j["ci_lower"] = m.ci_lower;
        j["ci_upper"] = m.ci_upper;
        j["n"] = m.n;
        return j;
    };
    json doc;
    doc["spearman"] = metric(spearman);
    doc["weighted_kappa"] = metric(weighted_kappa);
    doc["kendalls_w"] = metric(kendalls_w);
    doc["icc31"] = metric(icc31);
    return doc.dump(2) + "\n";
}

namespace {

using ItemKey = std::tuple<std::string, std::string, std::string>;

std::map<ItemKey, std::map<std::string, int>> pivot_by_item(const RatingTable& table) {
    std::map<ItemKey, std::map<std::string, int>> items;
    for (const auto& row : table.rows) {
        items[{row.case_id, row.section, row.principle}][row.rater] = row.rating;
    }
    return items;
}

AgreementMetric bootstrap_metric(const std::function<double(const std::vector<std::size_t>&)>& stat,
                                 std::size_t n, int iterations, std::uint64_t seed,
                                 std::uint64_t stream_base) {
    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    AgreementMetric metric;
    metric.value = stat(identity);
    metric.n = n;

    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(iterations));
    std::vector<std::size_t> indices(n);
    for (int b = 0; b < iterations; ++b) {
        Rng rng(seed, stream_base + static_cast<std::uint64_t>(b));
        bool ok = false;
        for (int attempt = 0; attempt < kRedrawCap && !ok; ++attempt) {
            for (auto& idx : indices) idx = rng.next_below(n);
            try {
                draws.push_back(stat(indices));
                ok = true;
            } catch (const Error&) {
            }
        }
        if (!ok) {
            throw ResampleExhaustionError("agreement metric undefined after redraws");
        }
    }
    std::sort(draws.begin(), draws.end());
    metric.ci_lower = percentile_of_sorted(draws, 0.025);
    metric.ci_upper = percentile_of_sorted(draws, 0.975);
    return metric;
}

}  // namespace

AgreementReport agreement_metrics(const RatingTable& table, const std::string& rater_a,
                                  const std::string& rater_b, int iterations,
                                  std::uint64_t seed) {
    auto items = pivot_by_item(table);

    std::vector<double> a, b;
    std::vector<int> ai, bi;
    for (const auto& [key, raters] : items) {
        auto it_a = raters.find(rater_a);
        auto it_b = raters.find(rater_b);
        if (it_a != raters.end() && it_b != raters.end()) {
            a.push_back(it_a->second);
            b.push_back(it_b->second);
            ai.push_back(it_a->second);
            bi.push_back(it_b->second);
        }
    }
    if (a.size() < 2) {
        throw InsufficientPairsError("fewer than 2 paired ratings for " + rater_a +
                                     " vs " + rater_b);
    }

    std::set<std::string> rater_set;
    for (const auto& row : table.rows) rater_set.insert(row.rater);
    std::vector<std::string> raters(rater_set.begin(), rater_set.end());

    // Complete sub-grid: items rated by every rater.
    std::vector<std::vector<double>> grid(raters.size());
    for (const auto& [key, by_rater] : items) {
        if (by_rater.size() != raters.size()) continue;
        for (std::size_t r = 0; r < raters.size(); ++r) {
            grid[r].push_back(by_rater.at(raters[r]));
        }
    }
    if (grid.empty() || grid[0].size() < 2) {
        throw InsufficientPairsError("fewer than 2 items rated by all raters");
    }

    AgreementReport report;
    report.spearman = bootstrap_metric(
        [&](const std::vector<std::size_t>& idx) {
            std::vector<double> ra(idx.size()), rb(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) {
                ra[i] = a[idx[i]];
                rb[i] = b[idx[i]];
            }
            return spearman(ra, rb);
        },
        a.size(), iterations, seed, 0);
    report.weighted_kappa = bootstrap_metric(
        [&](const std::vector<std::size_t>& idx) {
            std::vector<int> ra(idx.size()), rb(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) {
                ra[i] = ai[idx[i]];
                rb[i] = bi[idx[i]];
            }
            return weighted_kappa(ra, rb);
        },
        ai.size(), iterations, seed, 1u << 20);
    auto grid_stat = [&](double (*fn)(const std::vector<std::vector<double>>&)) {
        return [&, fn](const std::vector<std::size_t>& idx) {
            std::vector<std::vector<double>> resampled(grid.size());
            for (std::size_t r = 0; r < grid.size(); ++r) {
                resampled[r].reserve(idx.size());
                for (std::size_t i : idx) resampled[r].push_back(grid[r][i]);
            }
            return fn(resampled);
        };
    };
    report.kendalls_w = bootstrap_metric(grid_stat(&kendalls_w), grid[0].size(),
                                         iterations, seed, 2u << 20);
    report.icc31 = bootstrap_metric(grid_stat(&icc31), grid[0].size(), iterations, seed,
                                    3u << 20);
    return report;
}

GroupBy parse_group_by(const std::string& text) {
    std::string t = to_lower(text);
    if (t == "section") return GroupBy::section;
    if (t == "principle") return GroupBy::principle;
    if (t == "source" || t == "response-source" || t == "response_source") {
        return GroupBy::response_source;
    }
    throw ValueError("unknown group-by \"" + text + "\"");
}

std::vector<GroupRating> aggregate_ratings(const RatingTable& table, GroupBy group_by,
                                           bool aggregate_time, int iterations,
                                           std::uint64_t seed) {
    std::map<std::string, std::vector<double>> groups;
    for (const auto& row : table.rows) {
        std::string key;
        switch (group_by) {
            case GroupBy::section: key = row.section; break;
            case GroupBy::principle: key = row.principle; break;
            case GroupBy::response_source: key = row.source; break;
        }
        if (aggregate_time) {
            if (row.elapsed_minutes) groups[key].push_back(*row.elapsed_minutes);
        } else {
            groups[key].push_back(row.rating);
        }
    }
    if (groups.empty()) throw EmptyDataError("no ratings to aggregate");

    std::vector<GroupRating> out;
    std::uint64_t stream = 0;
    for (const auto& [key, values] : groups) {
        if (values.empty()) continue;
        auto result = bootstrap_ci_values(
            key, [](const std::vector<double>& v) {
                double s = 0.0;
                for (double x : v) s += x;
                return s / static_cast<double>(v.size());
            },
            values, iterations, seed + stream);
        ++stream;
        GroupRating g;
        g.group = key;
        g.mean = result.estimate;
        g.ci_lower = result.ci_lower;
        g.ci_upper = result.ci_upper;
        g.n = values.size();
        out.push_back(g);
    }
    return out;
}

}  // namespace wearlab::stats

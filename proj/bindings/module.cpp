// Python bindings for the main operations: ranking metrics, bootstrap,
// agreement statistics, training-load math, survey coding and PRO prompt
// rendering.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wearlab/errors.hpp"
#include "wearlab/features.hpp"
#include "wearlab/ingest.hpp"
#include "wearlab/models.hpp"
#include "wearlab/pro.hpp"
#include "wearlab/prompts.hpp"
#include "wearlab/stats.hpp"

namespace py = pybind11;
using namespace wearlab;

namespace {

std::vector<DailyActivityRecord> series_from_trimps(const std::vector<double>& trimps) {
    std::vector<DailyActivityRecord> out;
    Date start = Date(2024, 1, 1);
    for (std::size_t i = 0; i < trimps.size(); ++i) {
        DailyActivityRecord r;
        r.date = start + static_cast<std::int64_t>(i);
        r.trimp = trimps[i];
        out.push_back(r);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_wearlab, m) {
    m.doc() = "wearable-health data engineering and evaluation toolkit";

    py::register_exception<Error>(m, "WearlabError");

    m.def("auroc", &stats::auroc, py::arg("scores"), py::arg("labels"));
    m.def("auprc", &stats::auprc, py::arg("scores"), py::arg("labels"));
    m.def("benjamini_hochberg", &stats::benjamini_hochberg, py::arg("raw_p"));
    m.def("wilcoxon_rank_sum_p", &stats::wilcoxon_rank_sum_p, py::arg("x"), py::arg("y"));
    m.def("spearman", &stats::spearman, py::arg("a"), py::arg("b"));
    m.def("weighted_kappa", &stats::weighted_kappa, py::arg("a"), py::arg("b"),
          py::arg("categories") = 5);
    m.def("kendalls_w", &stats::kendalls_w, py::arg("ratings"));
    m.def("icc31", &stats::icc31, py::arg("ratings"));

    m.def(
        "bootstrap_mean_ci",
        [](const std::vector<double>& data, int iterations, std::uint64_t seed) {
            auto result = stats::bootstrap_ci_values(
                "mean",
                [](const std::vector<double>& v) {
                    double s = 0;
                    for (double x : v) s += x;
                    return s / static_cast<double>(v.size());
                },
                data, iterations, seed);
            return py::make_tuple(result.estimate, result.ci_lower, result.ci_upper);
        },
        py::arg("data"), py::arg("iterations") = 1000, py::arg("seed") = 0);

    m.def(
        "acute_trimp",
        [](const std::vector<double>& trimps) {
            auto daily = series_from_trimps(trimps);
            return features::acute_trimp(daily, daily.back().date);
        },
        py::arg("daily_trimps"), "Trailing-7-day TRIMP total of a daily series");
    m.def(
        "chronic_trimp",
        [](const std::vector<double>& trimps) {
            auto daily = series_from_trimps(trimps);
            return features::chronic_trimp(daily, daily.back().date);
        },
        py::arg("daily_trimps"), "Trailing-28-day TRIMP total over four");
    m.def(
        "acwr",
        [](const std::vector<double>& trimps) {
            auto daily = series_from_trimps(trimps);
            auto result = features::acwr(daily, daily.back().date);
            return py::make_tuple(result.ratio, result.display,
                                  features::acwr_band_label(result.band));
        },
        py::arg("daily_trimps"), "(ratio, display, band) for a daily TRIMP series");
    m.def("recent_z", &features::recent_z, py::arg("values"), py::arg("recent_window"),
          py::arg("baseline_window"));
    m.def(
        "circular_mean_minutes",
        [](const std::vector<double>& minutes) {
            std::vector<ClockTime> times;
            times.reserve(minutes.size());
            for (double v : minutes) times.push_back(ClockTime(v));
            return features::circular_mean(times).minutes();
        },
        py::arg("minutes"), "Circular mean of clock times given as minutes");
    m.def(
        "score_band",
        [](double score) { return features::score_band_label(features::score_band(score)); },
        py::arg("sleep_score"));

    m.def(
        "severity_from_position",
        [](const std::string& kind, const std::string& item, int position) {
            return ingest::severity_from_position(
                find_survey_item(parse_survey_kind(kind), item), position);
        },
        py::arg("kind"), py::arg("item"), py::arg("position"));
    m.def("binarize_response", &pro::binarize_response, py::arg("item"),
          py::arg("severity"));
    m.def("survey_items", [](const std::string& kind) {
        std::vector<std::string> names;
        for (const auto& item : survey_items(parse_survey_kind(kind))) {
            names.push_back(item.short_name);
        }
        return names;
    });
    m.def("sensor_feature_ids", [] {
        std::vector<std::string> ids;
        for (const auto& f : pro::sensor_features()) ids.push_back(f.id);
        return ids;
    });

    m.def(
        "render_pro_prompt",
        [](const std::string& age_bucket, const std::vector<double>& means,
           const std::string& item) {
            if (means.size() != pro::kFeatureCount) {
                throw DimensionError("expected 20 feature means");
            }
            prompts::ProPromptInput input;
            input.age_bucket = age_bucket;
            std::copy(means.begin(), means.end(), input.feature_means.begin());
            return prompts::render_pro_prompt(input, item, prompts::ProMode::zero_shot,
                                              {});
        },
        py::arg("age_bucket"), py::arg("feature_means"), py::arg("item"));

    m.def(
        "stub_score",
        [](std::uint64_t seed, const std::string& prompt,
           const std::vector<std::string>& completions, const std::string& bias) {
            prompts::StubLlmClient client(seed, bias);
            return client.score(prompt, completions);
        },
        py::arg("seed"), py::arg("prompt"), py::arg("completions"),
        py::arg("bias") = "");

    m.attr("__version__") = "0.1.0";
}

#include "nkcsim/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nkcsim/error.hpp"
#include "nkcsim/experiment.hpp"
#include "nkcsim/polyfit.hpp"

namespace nkcsim {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- plotting

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

// Minimal deterministic SVG line chart: raw points as circles, smoothed
// curves as polylines. All coordinates are formatted with fixed precision
// so identical data always yields identical bytes.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)),
          y_label_(std::move(y_label)) {}

    void set_domain(double xmin, double xmax, double ymin, double ymax) {
        xmin_ = xmin;
        xmax_ = xmax;
        ymin_ = ymin;
        ymax_ = ymax;
        if (xmax_ <= xmin_) xmax_ = xmin_ + 1.0;
        if (ymax_ <= ymin_) ymax_ = ymin_ + 1.0;
    }

    void add_points(const std::vector<double>& x, const std::vector<double>& y,
                    const char* color) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            body_ += "  <circle cx=\"" + fmt2(px(x[i])) + "\" cy=\"" + fmt2(py(y[i])) +
                     "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
        }
    }

    void add_line(const std::vector<double>& x, const std::vector<double>& y,
                  const char* color, bool dashed, const std::string& legend) {
        body_ += "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
                 "\" stroke-width=\"1.5\"";
        if (dashed) body_ += " stroke-dasharray=\"6 3\"";
        body_ += " points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) body_ += ' ';
            body_ += fmt2(px(x[i])) + "," + fmt2(py(y[i]));
        }
        body_ += "\"/>\n";
        if (!legend.empty()) legends_.emplace_back(legend, color, dashed);
    }

    void add_zone(double x_from, double x_to, const char* color) {
        body_ += "  <rect x=\"" + fmt2(px(x_from)) + "\" y=\"" + fmt2(py(ymax_)) +
                 "\" width=\"" + fmt2(px(x_to) - px(x_from)) + "\" height=\"" +
                 fmt2(py(ymin_) - py(ymax_)) + "\" fill=\"" + color +
                 "\" fill-opacity=\"0.08\"/>\n";
    }

    std::string render() const {
        const std::string w = std::to_string(int(kW));
        const std::string h = std::to_string(int(kH));
        std::string out;
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w +
               "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
        out += "  <rect width=\"" + w + "\" height=\"" + h + "\" fill=\"white\"/>\n";
        out += "  <text x=\"" + fmt2(kW / 2.0) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"15\">" +
               title_ + "</text>\n";

        // Axes and ticks.
        out += "  <rect x=\"" + fmt2(kL) + "\" y=\"" + fmt2(kT) + "\" width=\"" +
               fmt2(kW - kL - kR) + "\" height=\"" + fmt2(kH - kT - kB) +
               "\" fill=\"none\" stroke=\"#333333\"/>\n";
        for (int i = 0; i <= 5; ++i) {
            const double fx = xmin_ + (xmax_ - xmin_) * i / 5.0;
            const double fy = ymin_ + (ymax_ - ymin_) * i / 5.0;
            out += "  <line x1=\"" + fmt2(px(fx)) + "\" y1=\"" + fmt2(py(ymin_)) +
                   "\" x2=\"" + fmt2(px(fx)) + "\" y2=\"" + fmt2(py(ymin_) + 4) +
                   "\" stroke=\"#333333\"/>\n";
            out += "  <text x=\"" + fmt2(px(fx)) + "\" y=\"" + fmt2(py(ymin_) + 18) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"11\">" +
                   fmt_tick(fx) + "</text>\n";
            out += "  <line x1=\"" + fmt2(px(xmin_) - 4) + "\" y1=\"" + fmt2(py(fy)) +
                   "\" x2=\"" + fmt2(px(xmin_)) + "\" y2=\"" + fmt2(py(fy)) +
                   "\" stroke=\"#333333\"/>\n";
            out += "  <text x=\"" + fmt2(px(xmin_) - 8) + "\" y=\"" +
                   fmt2(py(fy) + 4) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                   "font-size=\"11\">" +
                   fmt_tick(fy) + "</text>\n";
        }
        out += "  <text x=\"" + fmt2((kL + kW - kR) / 2.0) + "\" y=\"" +
               fmt2(kH - 14.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               x_label_ + "</text>\n";
        out += "  <text x=\"18\" y=\"" + fmt2((kT + kH - kB) / 2.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\" transform=\"rotate(-90 18 " +
               fmt2((kT + kH - kB) / 2.0) + ")\">" + y_label_ + "</text>\n";

        out += body_;

        double ly = kT + 16.0;
        for (const auto& [label, color, dashed] : legends_) {
            out += "  <line x1=\"" + fmt2(kW - kR - 235.0) + "\" y1=\"" + fmt2(ly - 4) +
                   "\" x2=\"" + fmt2(kW - kR - 205.0) + "\" y2=\"" + fmt2(ly - 4) +
                   "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
                   (dashed ? " stroke-dasharray=\"6 3\"" : "") + "/>\n";
            out += "  <text x=\"" + fmt2(kW - kR - 199.0) + "\" y=\"" + fmt2(ly) +
                   "\" font-family=\"sans-serif\" font-size=\"11\">" + label +
                   "</text>\n";
            ly += 16.0;
        }
        out += "</svg>\n";
        return out;
    }

private:
    static constexpr double kW = 860, kH = 560, kL = 70, kR = 20, kT = 40, kB = 60;

    double px(double x) const {
        return kL + (x - xmin_) / (xmax_ - xmin_) * (kW - kL - kR);
    }
    double py(double y) const {
        return kH - kB - (y - ymin_) / (ymax_ - ymin_) * (kH - kT - kB);
    }

    std::string title_, x_label_, y_label_;
    double xmin_ = 0, xmax_ = 1, ymin_ = 0, ymax_ = 1;
    std::string body_;
    std::vector<std::tuple<std::string, std::string, bool>> legends_;
};

// ---------------------------------------------------------------- figures

struct FigureParams {
    int n_h = 10;
    int k_ai = 4;
    int k_h = 2;
    int c = 0; // 0 = figure default
    double hi = 0.6;
    double lo = 0.4;
};

FigureParams resolve_params(const std::map<std::string, double>& overrides) {
    FigureParams p;
    for (const auto& [key, value] : overrides) {
        if (key == "n_h") {
            p.n_h = static_cast<int>(value);
        } else if (key == "k_ai") {
            p.k_ai = static_cast<int>(value);
        } else if (key == "k_h") {
            p.k_h = static_cast<int>(value);
        } else if (key == "c") {
            p.c = static_cast<int>(value);
        } else if (key == "hi") {
            p.hi = value;
        } else if (key == "lo") {
            p.lo = value;
        } else {
            throw SimError(ErrorCode::UnknownKey,
                           "unknown figure override '" + key + "'");
        }
    }
    return p;
}

std::vector<double> ratio_axis() {
    std::vector<double> v(20);
    for (int i = 0; i < 20; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    return v;
}

TaskConfig base_task(TaskKind kind, const FigureParams& p) {
    TaskConfig cfg;
    cfg.kind = kind;
    cfg.agent_h = AgentSpec{Role::Human, p.n_h, p.k_h, RuleKind::HeuristicLinear,
                            UpdateMode::probabilistic()};
    cfg.agent_ai = AgentSpec{Role::AI, p.n_h + 1, p.k_ai, RuleKind::RuleUniform,
                             UpdateMode::probabilistic()};
    return cfg;
}

Json figure_spec(int fig_id, const FigureParams& p, int n_runs, std::uint64_t seed) {
    Json spec;
    spec["figure"] = fig_id;
    spec["n_h"] = p.n_h;
    spec["k_ai"] = p.k_ai;
    spec["k_h"] = p.k_h;
    spec["c"] = p.c;
    spec["hi"] = p.hi;
    spec["lo"] = p.lo;
    spec["runs"] = n_runs;
    spec["seed"] = seed;
    return spec;
}

std::vector<double> series_x(const SweepResult& sweep, std::size_t axis2_index) {
    std::vector<double> x;
    for (std::size_t i = 0; i < sweep.cells.size(); ++i) {
        if (i % sweep.axis2.values.size() == axis2_index) {
            x.push_back(sweep.cells[i].axis1_value);
        }
    }
    return x;
}

std::vector<double> series_y(const SweepResult& sweep, std::size_t axis2_index,
                             double (*pick)(const CellResult&)) {
    std::vector<double> y;
    for (std::size_t i = 0; i < sweep.cells.size(); ++i) {
        if (i % sweep.axis2.values.size() == axis2_index) {
            y.push_back(pick(sweep.cells[i]));
        }
    }
    return y;
}

double pick_apo(const CellResult& c) { return c.mc.mean_apo; }
double pick_apo_high(const CellResult& c) {
    return c.conditional ? c.conditional->mean_apo_high : 0.0;
}
double pick_apo_low(const CellResult& c) {
    return c.conditional ? c.conditional->mean_apo_low : 0.0;
}
double pick_peaks1(const CellResult& c) { return c.mc.mean_peaks_step1; }
double pick_peaks2(const CellResult& c) { return c.mc.mean_peaks_step2; }

void domain_from(std::vector<double>& lohi, const std::vector<double>& y) {
    for (double v : y) {
        lohi[0] = std::min(lohi[0], v);
        lohi[1] = std::max(lohi[1], v);
    }
}

// Raw points plus the order-3 smoothing the figures use.
void plot_series(SvgChart& chart, const std::vector<double>& x,
                 const std::vector<double>& y, const char* color, bool dashed,
                 const std::string& legend) {
    chart.add_points(x, y, color);
    const int degree = x.size() >= 4 ? 3 : static_cast<int>(x.size()) - 1;
    const PolyFit fit = fit_polynomial(x, y, degree);
    std::vector<double> cx, cy;
    const double lo = x.front(), hi = x.back();
    for (int i = 0; i <= 120; ++i) {
        const double xv = lo + (hi - lo) * i / 120.0;
        cx.push_back(xv);
        cy.push_back(poly_eval(fit.coeffs, xv));
    }
    chart.add_line(cx, cy, color, dashed, legend);
}

} // namespace

FigureOutput replicate_figure(int fig_id, const std::map<std::string, double>& overrides,
                              const RngPolicy& policy, int n_runs, int workers) {
    if (fig_id == 1 || fig_id == 2 || fig_id == 7) {
        throw SimError(ErrorCode::UnsupportedFigure,
                       "figure " + std::to_string(fig_id) +
                           " is a conceptual illustration with no data to replicate" +
                           (fig_id == 2 ? "; run the 'examples' subcommand for its "
                                          "worked values"
                                        : ""));
    }
    if (fig_id != 3 && fig_id != 4 && fig_id != 5 && fig_id != 6 && fig_id != 8) {
        throw SimError(ErrorCode::UnsupportedFigure,
                       "unsupported figure id " + std::to_string(fig_id) +
                           " (supported: 3, 4, 5, 6, 8)");
    }

    const FigureParams p = resolve_params(overrides);
    FigureOutput out;
    out.fig_id = fig_id;
    out.envelope = make_envelope(figure_spec(fig_id, p, n_runs, policy.master_seed),
                                 policy.master_seed);

    SweepSpec spec;
    spec.n_runs = n_runs;
    spec.policy = policy;
    spec.workers = workers;
    spec.hi = p.hi;
    spec.lo = p.lo;
    spec.axis1 = AxisSpec{"n_ai_over_n_h", ratio_axis()};

    if (fig_id == 3) {
        spec.base = base_task(TaskKind::Modular, p);
        spec.axis2 = AxisSpec{"k_h_over_k_ai", {0.25, 0.5, 1, 2, 3, 4}};
        const SweepResult sw = sweep(spec);

        SvgChart chart("Joint payoff in modular tasks", "n_ai / n_h", "mean APO");
        std::vector<double> dom{1e9, -1e9};
        for (std::size_t s = 0; s < sw.axis2.values.size(); ++s) {
            domain_from(dom, series_y(sw, s, pick_apo));
        }
        chart.set_domain(1, 20, dom[0] - 0.02, dom[1] + 0.02);
        for (std::size_t s = 0; s < sw.axis2.values.size(); ++s) {
            plot_series(chart, series_x(sw, s), series_y(sw, s, pick_apo), kPalette[s],
                        false, "k_h/k_ai = " + fmt_tick(sw.axis2.values[s]));
        }
        out.svg = chart.render();
        out.envelope.sweep = sw;
        return out;
    }

    if (fig_id == 4) {
        spec.base = base_task(TaskKind::AiToH, p);
        spec.base.c = 1; // cells derive c from the axis
        spec.axis2 = AxisSpec{"c_over_k_ai", {0.25, 0.5, 1, 2, 3, 4}};
        const SweepResult sw = sweep(spec);

        SvgChart chart("Joint payoff in AI-to-H sequenced tasks", "n_ai / n_h",
                       "mean APO");
        std::vector<double> dom{1e9, -1e9};
        for (std::size_t s = 0; s < sw.axis2.values.size(); ++s) {
            domain_from(dom, series_y(sw, s, pick_apo));
        }
        chart.set_domain(1, 20, dom[0] - 0.02, dom[1] + 0.02);
        for (std::size_t s = 0; s < sw.axis2.values.size(); ++s) {
            plot_series(chart, series_x(sw, s), series_y(sw, s, pick_apo), kPalette[s],
                        false, "c/k_ai = " + fmt_tick(sw.axis2.values[s]));
        }
        out.svg = chart.render();
        out.envelope.sweep = sw;
        return out;
    }

    if (fig_id == 5) {
        spec.base = base_task(TaskKind::HToAi, p);
        spec.base.c = p.c > 0 ? p.c : p.n_h;
        spec.axis2 = AxisSpec{"perpetuation", {0, 1}};
        spec.conditional = true;
        const SweepResult sw = sweep(spec);

        SvgChart chart("Joint payoff in H-to-AI sequenced tasks", "n_ai / n_h",
                       "mean APO");
        std::vector<double> dom{1e9, -1e9};
        for (std::size_t s = 0; s < 2; ++s) {
            domain_from(dom, series_y(sw, s, pick_apo));
            domain_from(dom, series_y(sw, s, pick_apo_high));
            domain_from(dom, series_y(sw, s, pick_apo_low));
        }
        chart.set_domain(1, 20, dom[0] - 0.02, dom[1] + 0.02);
        const char* labels[2] = {"rule-based", "hallucinatory"};
        for (std::size_t s = 0; s < 2; ++s) {
            plot_series(chart, series_x(sw, s), series_y(sw, s, pick_apo), kPalette[s],
                        false, labels[s]);
            plot_series(chart, series_x(sw, s), series_y(sw, s, pick_apo_high),
                        kPalette[s + 2], true,
                        std::string(labels[s]) + " | high-capability H");
            plot_series(chart, series_x(sw, s), series_y(sw, s, pick_apo_low),
                        kPalette[s + 4], true,
                        std::string(labels[s]) + " | low-capability H");
        }
        out.svg = chart.render();
        out.envelope.sweep = sw;
        return out;
    }

    if (fig_id == 6) {
        // Series 0: H-to-AI (rule-based) restricted to high-capability H.
        // Series 1: AI-to-H with moderate refinement (c = k_ai / 2).
        SweepSpec spec_a = spec;
        spec_a.base = base_task(TaskKind::HToAi, p);
        spec_a.base.c = p.c > 0 ? p.c : p.n_h;
        spec_a.axis2 = AxisSpec{"perpetuation", {0}};
        spec_a.conditional = true;
        const SweepResult sa = sweep(spec_a);

        SweepSpec spec_b = spec;
        spec_b.base = base_task(TaskKind::AiToH, p);
        spec_b.base.c = 1;
        spec_b.axis2 = AxisSpec{"c_over_k_ai", {0.5}};
        const SweepResult sb = sweep(spec_b);

        SweepResult merged;
        merged.axis1 = spec.axis1;
        merged.axis2 = AxisSpec{"sequence", {0, 1}};
        merged.n_runs = n_runs;
        merged.master_seed = policy.master_seed;
        merged.timestamp = sa.timestamp;
        for (std::size_t i = 0; i < sa.cells.size(); ++i) {
            CellResult a = sa.cells[i];
            a.axis2_value = 0;
            merged.cells.push_back(a);
            CellResult b = sb.cells[i];
            b.axis2_value = 1;
            merged.cells.push_back(b);
        }

        SvgChart chart("Sequencing comparison", "n_ai / n_h", "mean APO");
        const auto xa = series_x(merged, 0);
        const auto ya = series_y(merged, 0, pick_apo_high);
        const auto yb = series_y(merged, 1, pick_apo);
        std::vector<double> dom{1e9, -1e9};
        domain_from(dom, ya);
        domain_from(dom, yb);
        chart.set_domain(1, 20, dom[0] - 0.02, dom[1] + 0.02);
        plot_series(chart, xa, ya, kPalette[0], false, "h_to_ai | expert H");
        plot_series(chart, xa, yb, kPalette[1], false, "ai_to_h");
        const double max_b = *std::max_element(yb.begin(), yb.end());
        chart.add_line({1, 20}, {max_b, max_b}, "#888888", true, "max ai_to_h cell");
        out.svg = chart.render();
        out.envelope.sweep = merged;
        return out;
    }

    // Figure 8: local peaks found in step 1 vs step 2 of AI-to-H.
    spec.base = base_task(TaskKind::AiToH, p);
    spec.base.c = 1;
    spec.axis2 = AxisSpec{"c_over_k_ai", {0.5}};
    const SweepResult sw = sweep(spec);

    SvgChart chart("AI wastage in AI-to-H sequencing", "n_ai / n_h",
                   "mean local peaks");
    const auto x = series_x(sw, 0);
    const auto y1 = series_y(sw, 0, pick_peaks1);
    const auto y2 = series_y(sw, 0, pick_peaks2);
    std::vector<double> wastage(y1.size());
    for (std::size_t i = 0; i < y1.size(); ++i) wastage[i] = y1[i] - y2[i];
    std::vector<double> dom{0, -1e9};
    domain_from(dom, y1);
    domain_from(dom, y2);
    domain_from(dom, wastage);
    chart.set_domain(1, 20, std::min(0.0, dom[0]), dom[1] + 0.5);
    chart.add_zone(4, 6, "#2ca02c");
    plot_series(chart, x, y1, kPalette[0], false, "peaks found by AI (step 1)");
    plot_series(chart, x, y2, kPalette[1], false, "peaks used by H (step 2)");
    plot_series(chart, x, wastage, kPalette[3], true, "wastage (step1 - step2)");
    out.svg = chart.render();
    out.envelope.sweep = sw;
    return out;
}

} // namespace nkcsim

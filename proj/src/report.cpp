#include "quartic/report.hpp"

#include "quartic/errors.hpp"
#include "quartic/poly.hpp"
#include "quartic/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace quartic {

namespace {

std::string escape_json_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (ch < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                out += buf;
            } else {
                out += static_cast<char>(ch);
            }
        }
    }
    return out;
}

void write_json(const JsonValue& v, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (v.kind) {
    case JsonValue::Kind::Null:
        out += "null";
        break;
    case JsonValue::Kind::Bool:
        out += v.boolean ? "true" : "false";
        break;
    case JsonValue::Kind::Number:
        out += std::isfinite(v.number) ? format_json_number(v.number) : "null";
        break;
    case JsonValue::Kind::String:
        out += '"';
        out += escape_json_string(v.text);
        out += '"';
        break;
    case JsonValue::Kind::Array:
        if (v.items.empty()) {
            out += "[]";
            break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.items.size(); ++i) {
            out += pad_in;
            write_json(v.items[i], out, depth + 1);
            if (i + 1 < v.items.size()) out += ',';
            out += '\n';
        }
        out += pad;
        out += ']';
        break;
    case JsonValue::Kind::Object:
        if (v.members.empty()) {
            out += "{}";
            break;
        }
        out += "{\n";
        for (std::size_t i = 0; i < v.members.size(); ++i) {
            out += pad_in;
            out += '"';
            out += escape_json_string(v.members[i].first);
            out += "\": ";
            write_json(v.members[i].second, out, depth + 1);
            if (i + 1 < v.members.size()) out += ',';
            out += '\n';
        }
        out += pad;
        out += '}';
        break;
    }
}

} // namespace

JsonValue JsonValue::of(bool v) {
    JsonValue j;
    j.kind = Kind::Bool;
    j.boolean = v;
    return j;
}

JsonValue JsonValue::of(double v) {
    JsonValue j;
    j.kind = Kind::Number;
    j.number = v;
    return j;
}

JsonValue JsonValue::of(int v) { return of(static_cast<double>(v)); }

JsonValue JsonValue::of(const char* v) { return of(std::string(v)); }

JsonValue JsonValue::of(std::string v) {
    JsonValue j;
    j.kind = Kind::String;
    j.text = std::move(v);
    return j;
}

JsonValue& JsonValue::push(JsonValue v) {
    kind = Kind::Array;
    items.push_back(std::move(v));
    return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    kind = Kind::Object;
    for (auto& member : members) {
        if (member.first == key) {
            member.second = std::move(v);
            return *this;
        }
    }
    members.emplace_back(key, std::move(v));
    return *this;
}

std::string to_json(const JsonValue& value) {
    std::string out;
    write_json(value, out, 0);
    return out;
}

std::string format_json_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_svg_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

namespace {

JsonValue matrix_json(const LinearMap2& m) {
    JsonValue rows = JsonValue::array();
    for (int r = 0; r < 2; ++r) {
        JsonValue row = JsonValue::array();
        row.push(JsonValue::of(m(r, 0))).push(JsonValue::of(m(r, 1)));
        rows.push(std::move(row));
    }
    return rows;
}

JsonValue point_json(double L, double K) {
    JsonValue p = JsonValue::object();
    p.set("L", JsonValue::of(L)).set("K", JsonValue::of(K));
    return p;
}

JsonValue number_list_json(const std::vector<double>& xs) {
    JsonValue a = JsonValue::array();
    for (double x : xs) a.push(JsonValue::of(x));
    return a;
}

JsonValue optional_number_json(const std::optional<double>& x) {
    return x ? JsonValue::of(*x) : JsonValue::null();
}

JsonValue automorphism_json(const AutomorphismGroup& group) {
    JsonValue j = JsonValue::object();
    j.set("descriptor", JsonValue::of(group.descriptor));
    j.set("descriptor_only", JsonValue::of(group.descriptor_only));
    JsonValue gens = JsonValue::array();
    for (const auto& g : group.discrete_generators) gens.push(matrix_json(g));
    j.set("discrete_generators", std::move(gens));
    if (group.continuous_generator) {
        JsonValue sample = JsonValue::object();
        sample.set("sampled_at", JsonValue::of(1.0));
        sample.set("matrix", matrix_json((*group.continuous_generator)(1.0)));
        j.set("continuous_generator", std::move(sample));
    } else {
        j.set("continuous_generator", JsonValue::null());
    }
    return j;
}

JsonValue limit_json(const LimitGeometryResult& limit) {
    JsonValue j = JsonValue::object();
    j.set("direction", JsonValue::of(to_string(limit.direction)));
    j.set("result", limit.result ? JsonValue::of(to_string(*limit.result))
                                 : JsonValue::null());
    j.set("numeric_limit", limit.numeric_limit
                               ? point_json(limit.numeric_limit->L,
                                            limit.numeric_limit->K)
                               : JsonValue::null());
    j.set("diagnostic", JsonValue::of(limit.diagnostic));
    return j;
}

JsonValue slice_json(const SliceProfile& profile) {
    JsonValue j = JsonValue::object();
    JsonValue dom = JsonValue::array();
    dom.push(JsonValue::of(profile.dom_lo)).push(JsonValue::of(profile.dom_hi));
    j.set("dom", std::move(dom));
    JsonValue kinds = JsonValue::array();
    kinds.push(JsonValue::of(to_string(profile.boundary_lo)));
    kinds.push(JsonValue::of(to_string(profile.boundary_hi)));
    j.set("boundary", std::move(kinds));
    j.set("f_roots", number_list_json(profile.f_roots));
    j.set("metric_roots", number_list_json(profile.g_roots));
    j.set("t_m", optional_number_json(profile.t_m));
    j.set("t_M", optional_number_json(profile.t_M));
    return j;
}

} // namespace

ReportDocument build_report(const QuarticForm& h, JsonValue input_echo,
                            std::optional<Point2> hint, bool with_timing) {
    ReportDocument doc;
    doc.version = version_string;
    doc.input = std::move(input_echo);
    const auto start = std::chrono::steady_clock::now();
    doc.classification = classify(h, hint);
    if (doc.classification.standard_form) {
        const auto& sf = *doc.classification.standard_form;
        try {
            doc.slice = domain(sf.L, sf.K);
        } catch (const Error& e) {
            doc.classification.diagnostics.push_back(
                std::string("slice profile unavailable: ") + e.what());
        }
    }
    if (with_timing) {
        const auto stop = std::chrono::steady_clock::now();
        doc.timing_seconds =
            std::chrono::duration<double>(stop - start).count();
    }
    return doc;
}

JsonValue report_to_json(const ReportDocument& doc) {
    const ClassificationReport& rep = doc.classification;
    const bool hyperbolic = rep.class_tag != ClassTag::NonHyperbolic;

    JsonValue root = JsonValue::object();
    root.set("version", JsonValue::of(doc.version));
    root.set("input", doc.input);

    if (rep.standard_form) {
        const StandardForm& sf = *rep.standard_form;
        JsonValue j = JsonValue::object();
        j.set("L", JsonValue::of(sf.L));
        j.set("K", JsonValue::of(sf.K));
        j.set("frame", matrix_json(sf.frame));
        JsonValue base = JsonValue::array();
        base.push(JsonValue::of(sf.base_point.x()));
        base.push(JsonValue::of(sf.base_point.y()));
        j.set("base_point", std::move(base));
        root.set("standard_form", std::move(j));
    } else {
        root.set("standard_form", JsonValue::null());
    }

    if (hyperbolic) {
        JsonValue j = JsonValue::object();
        j.set("tag", JsonValue::of(to_string(rep.region.tag)));
        j.set("boundary_distance", JsonValue::of(rep.region.boundary_distance));
        j.set("near_boundary", JsonValue::of(rep.region.near_boundary));
        root.set("region", std::move(j));
    } else {
        root.set("region", JsonValue::null());
    }

    JsonValue cls = JsonValue::object();
    cls.set("class", JsonValue::of(to_string(rep.class_tag)));
    cls.set("parameter", optional_number_json(rep.parameter));
    cls.set("closed", JsonValue::of(rep.closed));
    cls.set("homogeneous", JsonValue::of(rep.homogeneous));
    cls.set("singular_at_infinity", JsonValue::of(rep.singular_at_infinity));
    cls.set("components", JsonValue::of(rep.components));
    cls.set("class_point", hyperbolic
                               ? point_json(rep.class_point.L, rep.class_point.K)
                               : JsonValue::null());
    cls.set("automorphism",
            hyperbolic ? automorphism_json(rep.automorphism) : JsonValue::null());
    JsonValue limits = JsonValue::array();
    for (const auto& limit : rep.limit_geometries) limits.push(limit_json(limit));
    cls.set("limit_geometries", std::move(limits));
    JsonValue notes = JsonValue::array();
    for (const auto& note : rep.diagnostics) notes.push(JsonValue::of(note));
    cls.set("diagnostics", std::move(notes));
    root.set("classification", std::move(cls));

    root.set("slice", doc.slice ? slice_json(*doc.slice) : JsonValue::null());
    if (doc.timing_seconds) {
        root.set("timing_seconds", JsonValue::of(*doc.timing_seconds));
    }
    return root;
}

std::string render_report(const ReportDocument& doc) {
    return to_json(report_to_json(doc)) + "\n";
}

JsonValue reduction_to_json(double K, const ReductionData& data) {
    JsonValue j = JsonValue::object();
    j.set("K", JsonValue::of(K));
    j.set("z", JsonValue::of(data.z));
    j.set("K_of_z", JsonValue::of(data.K_of_z));
    j.set("c", JsonValue::of(data.c));
    j.set("z_min", JsonValue::of(data.z_min));
    j.set("z_max", JsonValue::of(data.z_max));
    j.set("map", matrix_json(data.map));
    j.set("residual", JsonValue::of(data.residual));
    return j;
}

std::string slice_csv(double L, double K, int samples) {
    if (samples < 1) samples = 1;
    const SliceProfile profile = domain(L, K);
    const SlicePolynomial poly = slice_poly(L, K);
    std::string out = "t,f,df,g_num,g\n";
    for (int i = 0; i < samples; ++i) {
        const double t = profile.dom_lo +
                         (profile.dom_hi - profile.dom_lo) *
                             (static_cast<double>(i) + 1.0) /
                             (static_cast<double>(samples) + 1.0);
        out += format_json_number(t);
        out += ',';
        out += format_json_number(poly.f(t));
        out += ',';
        out += format_json_number(poly.df(t));
        out += ',';
        out += format_json_number(poly.metric_numerator(t));
        out += ',';
        try {
            out += format_json_number(metric(L, K, t).g_value);
        } catch (const Error&) {
            // f vanishes to working precision here: leave the cell empty.
        }
        out += '\n';
    }
    return out;
}

std::string trajectory_csv(const FlowTrajectory& trajectory) {
    std::string out = "t,L,K\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out += format_json_number(trajectory.times[i]);
        out += ',';
        out += format_json_number(trajectory.points[i].L);
        out += ',';
        out += format_json_number(trajectory.points[i].K);
        out += '\n';
    }
    return out;
}

std::vector<std::string> PortraitConfig::default_layers() {
    return {"closed-region", "u", "v", "w", "m", "fixed-points"};
}

namespace {

struct PortraitFrame {
    double l_min, l_max, k_min, k_max;
    double x0, y0, plot_w, plot_h;

    double x(double L) const {
        return x0 + (L - l_min) / (l_max - l_min) * plot_w;
    }
    double y(double K) const {
        return y0 + (k_max - K) / (k_max - k_min) * plot_h;
    }
};

void append_attr_number(std::string& out, double v) {
    // Avoid the "-0" token so reflected geometry stays byte-stable.
    if (v == 0.0) v = 0.0;
    out += format_svg_number(v);
}

void append_polyline(std::string& out, const PortraitFrame& frame,
                     const std::vector<std::pair<double, double>>& lk,
                     const char* role, const char* style) {
    if (lk.size() < 2) return;
    out += "  <polyline data-role=\"";
    out += role;
    out += "\" style=\"";
    out += style;
    out += "\" clip-path=\"url(#plot-area)\" points=\"";
    for (std::size_t i = 0; i < lk.size(); ++i) {
        if (i) out += ' ';
        append_attr_number(out, frame.x(lk[i].first));
        out += ',';
        append_attr_number(out, frame.y(lk[i].second));
    }
    out += "\"/>\n";
}

bool has_layer(const PortraitConfig& config, const char* name) {
    return std::find(config.layers.begin(), config.layers.end(), name) !=
           config.layers.end();
}

constexpr int curve_samples = 256;

} // namespace

std::string emit_portrait(const PortraitConfig& config) {
    const double pad_left = 56.0, pad_right = 16.0, pad_top = 16.0,
                 pad_bottom = 44.0;
    PortraitFrame frame{};
    frame.l_min = config.l_min;
    frame.l_max = config.l_max;
    frame.k_min = config.k_min;
    frame.k_max = config.k_max;
    frame.x0 = pad_left;
    frame.y0 = pad_top;
    frame.plot_w = static_cast<double>(config.width) - pad_left - pad_right;
    frame.plot_h = static_cast<double>(config.height) - pad_top - pad_bottom;
    if (!(frame.l_max > frame.l_min) || !(frame.k_max > frame.k_min) ||
        frame.plot_w <= 0.0 || frame.plot_h <= 0.0) {
        throw DomainError("portrait extents must be nonempty and the canvas "
                          "larger than its margins");
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    svg += std::to_string(config.width);
    svg += "\" height=\"";
    svg += std::to_string(config.height);
    svg += "\" viewBox=\"0 0 ";
    svg += std::to_string(config.width);
    svg += ' ';
    svg += std::to_string(config.height);
    svg += "\">\n";
    svg += "  <defs><clipPath id=\"plot-area\"><rect x=\"";
    append_attr_number(svg, frame.x0);
    svg += "\" y=\"";
    append_attr_number(svg, frame.y0);
    svg += "\" width=\"";
    append_attr_number(svg, frame.plot_w);
    svg += "\" height=\"";
    append_attr_number(svg, frame.plot_h);
    svg += "\"/></clipPath></defs>\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"";
    svg += std::to_string(config.width);
    svg += "\" height=\"";
    svg += std::to_string(config.height);
    svg += "\" fill=\"#ffffff\"/>\n";

    // Gridlines and ticks: L every 0.5, K every 0.25.
    const auto tick_values = [](double lo, double hi, double step) {
        std::vector<double> ticks;
        double v = std::ceil(lo / step - 1e-9) * step;
        for (; v <= hi + 1e-9; v += step) {
            ticks.push_back(std::abs(v) < 1e-12 ? 0.0 : v);
        }
        return ticks;
    };
    for (double l : tick_values(frame.l_min, frame.l_max, 0.5)) {
        const double x = frame.x(l);
        svg += "  <line x1=\"";
        append_attr_number(svg, x);
        svg += "\" y1=\"";
        append_attr_number(svg, frame.y0);
        svg += "\" x2=\"";
        append_attr_number(svg, x);
        svg += "\" y2=\"";
        append_attr_number(svg, frame.y0 + frame.plot_h);
        svg += "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "  <text x=\"";
        append_attr_number(svg, x);
        svg += "\" y=\"";
        append_attr_number(svg, frame.y0 + frame.plot_h + 18.0);
        svg += "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\""
               " text-anchor=\"middle\">";
        svg += format_svg_number(l);
        svg += "</text>\n";
    }
    for (double k : tick_values(frame.k_min, frame.k_max, 0.25)) {
        const double y = frame.y(k);
        svg += "  <line x1=\"";
        append_attr_number(svg, frame.x0);
        svg += "\" y1=\"";
        append_attr_number(svg, y);
        svg += "\" x2=\"";
        append_attr_number(svg, frame.x0 + frame.plot_w);
        svg += "\" y2=\"";
        append_attr_number(svg, y);
        svg += "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "  <text x=\"";
        append_attr_number(svg, frame.x0 - 8.0);
        svg += "\" y=\"";
        append_attr_number(svg, y + 4.0);
        svg += "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\""
               " text-anchor=\"end\">";
        svg += format_svg_number(k);
        svg += "</text>\n";
    }

    // Closed-region shading: |L| <= u(K) above the seam, |L| <= w(K) below,
    // clipped to the viewport.
    if (has_layer(config, "closed-region") && frame.k_min < 0.25) {
        const double seam = -1.0 / 12.0;
        const double k_top = std::min(frame.k_max, 0.25);
        const auto half_width = [&](double k) {
            return k >= seam ? boundary_u(k) : boundary_w(k);
        };
        std::vector<std::pair<double, double>> outline;
        for (int i = 0; i <= curve_samples; ++i) {
            const double k = frame.k_min + (k_top - frame.k_min) *
                                               static_cast<double>(i) /
                                               curve_samples;
            outline.emplace_back(half_width(k), k);
        }
        for (int i = curve_samples; i >= 0; --i) {
            const double k = frame.k_min + (k_top - frame.k_min) *
                                               static_cast<double>(i) /
                                               curve_samples;
            outline.emplace_back(-half_width(k), k);
        }
        svg += "  <polygon data-role=\"closed-region\" fill=\"#1f77b4\" "
               "fill-opacity=\"0.10\" stroke=\"none\" "
               "clip-path=\"url(#plot-area)\" points=\"";
        for (std::size_t i = 0; i < outline.size(); ++i) {
            if (i) svg += ' ';
            append_attr_number(svg, frame.x(outline[i].first));
            svg += ',';
            append_attr_number(svg, frame.y(outline[i].second));
        }
        svg += "\"/>\n";
    }

    const double seam = -1.0 / 12.0;
    const auto sampled_curve = [&](double k_lo, double k_hi, double sign,
                                   double (*fn)(double)) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= curve_samples; ++i) {
            const double k =
                k_lo + (k_hi - k_lo) * static_cast<double>(i) / curve_samples;
            pts.emplace_back(sign * fn(k), k);
        }
        return pts;
    };

    if (has_layer(config, "u") && frame.k_max > seam) {
        const double k_lo = std::max(frame.k_min, seam);
        for (double sign : {1.0, -1.0}) {
            append_polyline(svg, frame,
                            sampled_curve(k_lo, frame.k_max, sign, &boundary_u),
                            "u-curve",
                            "fill:none;stroke:#1f77b4;stroke-width:2");
        }
    }
    if (has_layer(config, "v") && frame.k_min < 0.0) {
        const double k_hi = std::min(frame.k_max, 0.0);
        for (double sign : {1.0, -1.0}) {
            append_polyline(svg, frame,
                            sampled_curve(frame.k_min, k_hi, sign, &boundary_v),
                            "v-curve",
                            "fill:none;stroke:#9467bd;stroke-width:1.5;"
                            "stroke-dasharray:6 3");
        }
    }
    if (has_layer(config, "w") && frame.k_min < seam) {
        const double k_hi = std::min(frame.k_max, seam);
        for (double sign : {1.0, -1.0}) {
            append_polyline(svg, frame,
                            sampled_curve(frame.k_min, k_hi, sign, &boundary_w),
                            "w-curve",
                            "fill:none;stroke:#d62728;stroke-width:2");
        }
    }
    if (has_layer(config, "m") && frame.k_min < seam && frame.k_max > seam) {
        const double b = fixed_point_b().L;
        for (double sign : {1.0, -1.0}) {
            std::vector<std::pair<double, double>> segment{
                {sign * b, seam},
                {sign > 0.0 ? frame.l_max : frame.l_min, seam}};
            append_polyline(svg, frame, segment, "m-curve",
                            "fill:none;stroke:#7f7f7f;stroke-width:1.5;"
                            "stroke-dasharray:2 3");
        }
    }

    for (const auto& trajectory : config.trajectories) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(trajectory.points.size());
        for (const auto& p : trajectory.points) pts.emplace_back(p.L, p.K);
        append_polyline(svg, frame, pts, "trajectory",
                        "fill:none;stroke:#2ca02c;stroke-width:1.5");
    }

    if (has_layer(config, "fixed-points")) {
        const ModuliPoint a = fixed_point_a();
        const ModuliPoint b = fixed_point_b();
        const std::vector<std::pair<double, double>> markers{
            {a.L, a.K}, {b.L, b.K}, {-b.L, b.K}};
        for (const auto& m : markers) {
            if (m.first < frame.l_min || m.first > frame.l_max ||
                m.second < frame.k_min || m.second > frame.k_max) {
                continue;
            }
            svg += "  <circle data-role=\"fixed-point\" cx=\"";
            append_attr_number(svg, frame.x(m.first));
            svg += "\" cy=\"";
            append_attr_number(svg, frame.y(m.second));
            svg += "\" r=\"4\" fill=\"#000000\"/>\n";
        }
    }

    // Plot frame and axis titles go on top of everything.
    svg += "  <rect x=\"";
    append_attr_number(svg, frame.x0);
    svg += "\" y=\"";
    append_attr_number(svg, frame.y0);
    svg += "\" width=\"";
    append_attr_number(svg, frame.plot_w);
    svg += "\" height=\"";
    append_attr_number(svg, frame.plot_h);
    svg += "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"";
    append_attr_number(svg, frame.x0 + frame.plot_w / 2.0);
    svg += "\" y=\"";
    append_attr_number(svg, static_cast<double>(config.height) - 8.0);
    svg += "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#000000\" "
           "text-anchor=\"middle\">L</text>\n";
    svg += "  <text x=\"16\" y=\"";
    append_attr_number(svg, frame.y0 + frame.plot_h / 2.0);
    svg += "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#000000\" "
           "text-anchor=\"middle\">K</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace quartic

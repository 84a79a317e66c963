#ifndef QUARTIC_REPORT_HPP
#define QUARTIC_REPORT_HPP

#include "quartic/classification.hpp"
#include "quartic/moduli.hpp"
#include "quartic/slice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

/**
 * \brief Insertion-ordered JSON value for deterministic report emission.
 *
 * Numbers are serialized with 17 significant digits (round-trip exact for
 * doubles); non-finite numbers serialize as null (JSON has no NaN/Inf).
 * Object keys keep insertion order, so identical inputs give byte-identical
 * documents (the golden-file guarantee).
 */
struct JsonValue {
    enum class Kind { Null, Bool, Number, String, Array, Object };

    Kind kind = Kind::Null;
    bool boolean = false;
    double number = 0.0;
    std::string text;
    std::vector<JsonValue> items;                           ///< Array payload
    std::vector<std::pair<std::string, JsonValue>> members; ///< Object payload

    static JsonValue null() { return JsonValue{}; }
    static JsonValue of(bool v);
    static JsonValue of(double v);
    static JsonValue of(int v);
    static JsonValue of(const char* v);
    static JsonValue of(std::string v);
    static JsonValue array() { JsonValue v; v.kind = Kind::Array; return v; }
    static JsonValue object() { JsonValue v; v.kind = Kind::Object; return v; }

    /** Append to an array; returns *this for chaining. */
    JsonValue& push(JsonValue v);
    /** Insert or replace a key; returns *this for chaining. */
    JsonValue& set(const std::string& key, JsonValue v);
};

/** Render with two-space indentation and a stable key order. */
std::string to_json(const JsonValue& value);

/** Fixed float formats: 17 significant digits (JSON), 9 (SVG). */
std::string format_json_number(double x);
std::string format_svg_number(double x);

/**
 * \brief Everything one classification run produces, bundled for emission.
 *
 * `input` echoes the parsed input (so reports are self-describing);
 * `slice` is present when a standard form was computed and its domain
 * analysis succeeded; `timing_seconds` is present only when requested
 * (timing breaks byte-determinism, so golden files never include it).
 */
struct ReportDocument {
    std::string version;
    JsonValue input;
    ClassificationReport classification;
    std::optional<SliceProfile> slice;
    std::optional<double> timing_seconds;
};

/** Classify h and assemble the document (the `classify` CLI path). */
ReportDocument build_report(const QuarticForm& h, JsonValue input_echo,
                            std::optional<Point2> hint = std::nullopt,
                            bool with_timing = false);

/** The document as a JSON tree / as rendered text (with trailing newline). */
JsonValue report_to_json(const ReportDocument& doc);
std::string render_report(const ReportDocument& doc);

/** ReductionData as a JSON tree (the `reduce` CLI path). */
JsonValue reduction_to_json(double K, const ReductionData& data);

/** CSV of the slice profile of (L,K): header "t,f,df,g_num,g" and `samples`
 *  interior points of dom; g is empty at samples where f = 0. */
std::string slice_csv(double L, double K, int samples);

/** CSV of a flow trajectory: header "t,L,K", one row per recorded point. */
std::string trajectory_csv(const FlowTrajectory& trajectory);

/**
 * \brief Parameter-plane portrait configuration.
 *
 * `layers` lists what to draw on top of the axes, in this fixed paint
 * order: "closed-region" (shading), "u", "v", "w", "m" (boundary curves),
 * "fixed-points" (the three markers).  An empty list gives axes only.
 * Trajectories, when supplied, are always drawn.
 */
struct PortraitConfig {
    double l_min = -1.5;
    double l_max = 1.5;
    double k_min = -0.6;
    double k_max = 1.3;
    int width = 840;
    int height = 680;
    std::vector<std::string> layers = default_layers();
    std::vector<FlowTrajectory> trajectories;

    static std::vector<std::string> default_layers();
};

/** Deterministic SVG (9-significant-digit coordinates; fixed element
 *  order): same config, byte-identical output.  Curve and marker elements
 *  carry data-role attributes ("u-curve", "fixed-point", ...). */
std::string emit_portrait(const PortraitConfig& config);

} // namespace quartic

#endif // QUARTIC_REPORT_HPP

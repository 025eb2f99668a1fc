#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>

namespace copat {

// Failure guidewords.
enum class FailureType { Err, Loss };

enum class HardwareKind { Ecu, Can, Interface, Wireless, Switch, Actuator };

// Violated security property of a (potential) threat.
enum class ThreatType { Con, Int, Ava };

// Threat severity classes.
enum class ThreatSeverity { Neg, Mod, Maj, Sev };

enum class Asil { QM, A, B, C, D };

// Who introduced a fact: the user's input files, a reasoning rule, or a
// pattern instantiation (fresh `nu` elements).
enum class Provenance { User, Derived, Generated };

enum class PatternKind { Safety, Security };

enum class AssumptionKind { AreIndependent, AreDecoupled, AreVerified, HavePolicies };

// Fault-tolerance milestone: never, or after most/all X detected failures.
// `most` covers plausibility-check style detection that misses a fraction of
// failures; `all` requires exact detection.
struct ToleranceLevel {
    enum class Kind { Never, Most, All };

    Kind kind = Kind::Never;
    int count = 0;  // >= 1 unless kind == Never

    static ToleranceLevel never() { return {}; }
    static ToleranceLevel most(int x) { return {Kind::Most, x}; }
    static ToleranceLevel all(int x) { return {Kind::All, x}; }

    friend bool operator==(const ToleranceLevel&, const ToleranceLevel&) = default;
    friend auto operator<=>(const ToleranceLevel&, const ToleranceLevel&) = default;
};

// The four intent attributes a safety pattern guarantees.
struct IntentAttrs {
    Asil asil = Asil::QM;
    ToleranceLevel fail_op, fail_silent, fail_safe;

    friend bool operator==(const IntentAttrs&, const IntentAttrs&) = default;
    friend auto operator<=>(const IntentAttrs&, const IntentAttrs&) = default;
};

// Full safety intent: which failure types the pattern avoids, plus attributes.
struct SafetyIntentSpec {
    std::set<FailureType> fail_types;
    IntentAttrs attrs;

    friend bool operator==(const SafetyIntentSpec&, const SafetyIntentSpec&) = default;
};

// Token <-> enum conversions for the fact format.
std::string to_token(FailureType t);
std::string to_token(HardwareKind k);
std::string to_token(ThreatType t);
std::string to_token(ThreatSeverity s);
std::string to_token(Asil a);
std::string to_token(AssumptionKind k);
std::string to_token(const ToleranceLevel& t);

std::optional<FailureType> failure_type_from(const std::string& tok);
std::optional<ThreatType> threat_type_from(const std::string& tok);
std::optional<ThreatSeverity> threat_severity_from(const std::string& tok);
std::optional<Asil> asil_from(const std::string& tok);
std::optional<AssumptionKind> assumption_kind_from(const std::string& tok);
std::optional<ToleranceLevel> tolerance_from(const std::string& tok);

// Hazard classification tokens: s0..s3, e1..e4, c1..c3.
std::optional<int> severity_class_from(const std::string& tok);
std::optional<int> exposure_class_from(const std::string& tok);
std::optional<int> controllability_class_from(const std::string& tok);

// True for identifiers minted by pattern instantiation (`nu` + capital).
bool is_generated_id(const std::string& id);

// Valid identifier token: lowercase letter, then letters/digits/underscore.
bool is_valid_id(const std::string& id);

}  // namespace copat

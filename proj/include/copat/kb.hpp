#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copat/types.hpp"

namespace copat {

struct Component {
    std::string id;
    Provenance prov = Provenance::User;
    friend bool operator==(const Component& a, const Component& b) { return a.id == b.id; }
};

struct SubComponent {
    std::string child, parent;
    Provenance prov = Provenance::User;
    friend bool operator==(const SubComponent& a, const SubComponent& b) {
        return a.child == b.child && a.parent == b.parent;
    }
};

// Unidirectional logical channel between two components.
struct Channel {
    std::string id, source, sink;
    Provenance prov = Provenance::User;
    friend bool operator==(const Channel& a, const Channel& b) {
        return a.id == b.id && a.source == b.source && a.sink == b.sink;
    }
};

struct InformationFlow {
    std::string id;
    std::vector<std::string> channels;
    Provenance prov = Provenance::User;
    friend bool operator==(const InformationFlow& a, const InformationFlow& b) {
        return a.id == b.id && a.channels == b.channels;
    }
};

struct HardwareUnit {
    std::string id;
    HardwareKind kind = HardwareKind::Ecu;
    Provenance prov = Provenance::User;
    friend bool operator==(const HardwareUnit& a, const HardwareUnit& b) {
        return a.id == b.id && a.kind == b.kind;
    }
};

// public(hw): entry point accessible to external actors.
struct PublicMark {
    std::string hw;
    Provenance prov = Provenance::User;
    friend bool operator==(const PublicMark& a, const PublicMark& b) { return a.hw == b.hw; }
};

// Component on an ECU/interface/switch, or channel on a CAN/wireless medium.
struct Deployment {
    std::string element, host;
    Provenance prov = Provenance::User;
    friend bool operator==(const Deployment& a, const Deployment& b) {
        return a.element == b.element && a.host == b.host;
    }
};

struct Hazard {
    std::string id, system;
    int severity = 0;         // 0..3
    int exposure = 1;         // 1..4
    int controllability = 1;  // 1..3
    Provenance prov = Provenance::User;
    friend bool operator==(const Hazard& a, const Hazard& b) {
        return a.id == b.id && a.system == b.system && a.severity == b.severity &&
               a.exposure == b.exposure && a.controllability == b.controllability;
    }
};

// Explicit ASIL assignment, overriding the S/E/C determination.
struct AsilOverride {
    std::string hazard;
    Asil level = Asil::QM;
    Provenance prov = Provenance::User;
    friend bool operator==(const AsilOverride& a, const AsilOverride& b) {
        return a.hazard == b.hazard && a.level == b.level;
    }
};

struct Fault {
    std::string id, locus;  // locus: component or channel
    Provenance prov = Provenance::User;
    friend bool operator==(const Fault& a, const Fault& b) {
        return a.id == b.id && a.locus == b.locus;
    }
};

struct Failure {
    std::string id;
    FailureType type = FailureType::Err;
    Provenance prov = Provenance::User;
    friend bool operator==(const Failure& a, const Failure& b) {
        return a.id == b.id && a.type == b.type;
    }
};

struct FaultTrigger {
    std::string fault, failure;
    Provenance prov = Provenance::User;
    friend bool operator==(const FaultTrigger& a, const FaultTrigger& b) {
        return a.fault == b.fault && a.failure == b.failure;
    }
};

struct MinimalCutSet {
    std::string id;
    std::vector<std::string> failures;
    Provenance prov = Provenance::User;
    friend bool operator==(const MinimalCutSet& a, const MinimalCutSet& b) {
        return a.id == b.id && a.failures == b.failures;
    }
};

// Each cut set in the list independently leads to the hazard.
struct McsToHazard {
    std::vector<std::string> mcs_list;
    std::string hazard;
    Provenance prov = Provenance::User;
    friend bool operator==(const McsToHazard& a, const McsToHazard& b) {
        return a.mcs_list == b.mcs_list && a.hazard == b.hazard;
    }
};

struct SafetyGoal {
    std::string id, hazard;
    ToleranceLevel fail_op, fail_silent, fail_safe;
    Provenance prov = Provenance::User;
    friend bool operator==(const SafetyGoal& a, const SafetyGoal& b) {
        return a.id == b.id && a.hazard == b.hazard && a.fail_op == b.fail_op &&
               a.fail_silent == b.fail_silent && a.fail_safe == b.fail_safe;
    }
};

struct SafetyIntentFact {
    std::string pattern;
    SafetyIntentSpec intent;
    Provenance prov = Provenance::User;
    friend bool operator==(const SafetyIntentFact& a, const SafetyIntentFact& b) {
        return a.pattern == b.pattern && a.intent == b.intent;
    }
};

struct SecurityIntentFact {
    std::string pattern;
    std::set<ThreatType> threat_types;
    Provenance prov = Provenance::User;
    friend bool operator==(const SecurityIntentFact& a, const SecurityIntentFact& b) {
        return a.pattern == b.pattern && a.threat_types == b.threat_types;
    }
};

// A placed pattern. Component/channel lists are positional; role meaning per
// slot comes from the catalog template of the same name.
struct PatternInstance {
    std::string id, name;
    PatternKind kind = PatternKind::Safety;
    std::vector<std::string> components;
    std::vector<std::string> input_ch, internal_ch, output_ch;
    Provenance prov = Provenance::User;
    friend bool operator==(const PatternInstance& a, const PatternInstance& b) {
        return a.id == b.id && a.name == b.name && a.kind == b.kind &&
               a.components == b.components && a.input_ch == b.input_ch &&
               a.internal_ch == b.internal_ch && a.output_ch == b.output_ch;
    }
};

struct Assumption {
    std::string pattern;
    AssumptionKind kind = AssumptionKind::AreVerified;
    std::vector<std::string> subjects;
    Provenance prov = Provenance::User;
    friend bool operator==(const Assumption& a, const Assumption& b) {
        return a.pattern == b.pattern && a.kind == b.kind && a.subjects == b.subjects;
    }
};

// Hardware hops, subject's host first, intruder entry point last.
struct AttackPath {
    std::vector<std::string> hops;
    friend bool operator==(const AttackPath&, const AttackPath&) = default;
    friend auto operator<=>(const AttackPath&, const AttackPath&) = default;
};

// Potential threat (no path) or realized threat (path present).
struct ThreatRecord {
    std::string id;
    std::string target, target_hw;
    ThreatType type = ThreatType::Con;
    ThreatSeverity severity = ThreatSeverity::Neg;
    std::optional<AttackPath> path;
    Provenance prov = Provenance::User;
    friend bool operator==(const ThreatRecord& a, const ThreatRecord& b) {
        return a.id == b.id && a.target == b.target && a.target_hw == b.target_hw &&
               a.type == b.type && a.severity == b.severity && a.path == b.path;
    }
};

struct ExploreMark {
    std::string pattern;
    PatternKind kind = PatternKind::Safety;
    Provenance prov = Provenance::User;
    friend bool operator==(const ExploreMark& a, const ExploreMark& b) {
        return a.pattern == b.pattern && a.kind == b.kind;
    }
};

// Term tree for facts with unrecognized predicates.
struct Term {
    std::string token;       // set when !is_list
    std::vector<Term> list;  // set when is_list
    bool is_list = false;

    static Term tok(std::string t) { return {std::move(t), {}, false}; }
    static Term lst(std::vector<Term> l) { return {{}, std::move(l), true}; }
    friend bool operator==(const Term& a, const Term& b) {
        return a.is_list == b.is_list && a.token == b.token && a.list == b.list;
    }
};

struct ExtensionFact {
    std::string predicate;
    std::vector<Term> args;
    Provenance prov = Provenance::User;
    friend bool operator==(const ExtensionFact& a, const ExtensionFact& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
};

// Typed store of all facts. Treated as an immutable value once built; engines
// take it by const reference and produce new values via merge().
struct KnowledgeBase {
    std::vector<Component> components;
    std::vector<SubComponent> subcomponents;
    std::vector<Channel> channels;
    std::vector<InformationFlow> flows;
    std::vector<HardwareUnit> hardware;
    std::vector<PublicMark> publics;
    std::vector<Deployment> deployments;
    std::vector<Hazard> hazards;
    std::vector<AsilOverride> asil_overrides;
    std::vector<Fault> faults;
    std::vector<Failure> failures;
    std::vector<FaultTrigger> triggers;
    std::vector<MinimalCutSet> cut_sets;
    std::vector<McsToHazard> mcs_links;
    std::vector<SafetyGoal> goals;
    std::vector<SafetyIntentFact> safety_intents;
    std::vector<SecurityIntentFact> security_intents;
    std::vector<PatternInstance> instances;
    std::vector<Assumption> assumptions;
    std::vector<ThreatRecord> threats;
    std::vector<ExploreMark> explores;
    std::vector<ExtensionFact> extensions;

    bool empty() const;

    // Lookups (nullptr when absent).
    const Component* component(const std::string& id) const;
    const Channel* channel(const std::string& id) const;
    const HardwareUnit* hardware_unit(const std::string& id) const;
    const Hazard* hazard(const std::string& id) const;
    const Fault* fault(const std::string& id) const;
    const Failure* failure(const std::string& id) const;
    const MinimalCutSet* cut_set(const std::string& id) const;
    const SafetyGoal* goal(const std::string& id) const;

    bool is_public(const std::string& hw) const;
    bool is_bus(const std::string& hw) const;  // can or wireless

    // Host of a deployed component or channel.
    std::optional<std::string> host_of(const std::string& element) const;

    // Set-style insertion: exact duplicates are dropped.
    void add(Component f);
    void add(SubComponent f);
    void add(Channel f);
    void add(InformationFlow f);
    void add(HardwareUnit f);
    void add(PublicMark f);
    void add(Deployment f);
    void add(Hazard f);
    void add(AsilOverride f);
    void add(Fault f);
    void add(Failure f);
    void add(FaultTrigger f);
    void add(MinimalCutSet f);
    void add(McsToHazard f);
    void add(SafetyGoal f);
    void add(SafetyIntentFact f);
    void add(SecurityIntentFact f);
    void add(PatternInstance f);
    void add(Assumption f);
    void add(ThreatRecord f);
    void add(ExploreMark f);
    void add(ExtensionFact f);
};

enum class DiagSeverity { Error, Warning };

struct Diagnostic {
    DiagSeverity severity = DiagSeverity::Error;
    std::string code;     // e.g. "dangling-ref", "subcp-cycle"
    std::string message;
};

// Structural checks: dangling references, sub-component cycles, malformed
// deployments as errors; non-chaining flows and unusual public kinds as
// warnings. An error-free kb is accepted by all engines.
std::vector<Diagnostic> validate(const KnowledgeBase& kb);

bool has_errors(const std::vector<Diagnostic>& diags);

struct IdCollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fact-set union. Throws IdCollisionError when the same identifier is defined
// differently on both sides.
KnowledgeBase merge(const KnowledgeBase& base, const KnowledgeBase& delta);

}  // namespace copat

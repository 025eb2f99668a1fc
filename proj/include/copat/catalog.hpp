#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copat/kb.hpp"

namespace copat {

enum class Role { Target, Redundant, Checker, Bus, Protected };

struct RoleSlot {
    std::string name;  // slot name as printed in the pattern structure
    Role role = Role::Redundant;
};

// How instantiation wires generated channels. Slot names refer to role slots.
struct TemplateWiring {
    struct Input {
        std::string slot;     // input channel slot name
        std::string to_role;  // receiving role slot
    };
    struct Internal {
        std::string slot;
        std::string from_role, to_role;
    };
    struct Output {
        std::string slot;
        std::string from_role;
    };
    std::vector<Input> inputs;
    std::vector<Internal> internals;
    std::vector<Output> outputs;
};

struct PatternTemplate {
    std::string name;
    PatternKind kind = PatternKind::Safety;
    std::vector<RoleSlot> roles;
    std::vector<std::string> input_slots, internal_slots, output_slots;
    TemplateWiring wiring;

    std::optional<SafetyIntentSpec> safety_intent;
    std::optional<std::set<ThreatType>> security_intent;

    struct AssumptionRule {
        AssumptionKind kind;
        std::vector<std::string> role_subset;  // role slot names
    };
    std::vector<AssumptionRule> assumption_rules;

    // Named but unspecified: usable only once the user supplies an intent.
    bool stub = false;

    bool has_intent() const {
        return safety_intent.has_value() || security_intent.has_value();
    }
    const RoleSlot* role_by_name(const std::string& n) const;
    std::vector<std::string> roles_of(Role r) const;
};

struct CatalogError : std::runtime_error {
    enum class Code { UnknownPattern, UnknownTarget, MissingIntent, BadPlacement };
    CatalogError(Code c, const std::string& message)
        : std::runtime_error(message), code(c) {}
    Code code;
};

// Everything produced by placing one pattern.
struct Instantiation {
    PatternInstance instance;
    std::vector<Assumption> assumptions;
    KnowledgeBase delta;  // fresh components/channels/deployments + the instance itself
};

// Firewall sits on a hardware-unit/bus attachment; a security monitor guards
// one component.
struct SecurityPlacement {
    std::string unit, bus;    // firewall
    std::string component;   // security monitor
};

class Catalog {
public:
    // The five fully specified templates plus five named stubs.
    static Catalog builtin();

    // Copy extended with user-supplied intent/structure facts from a kb.
    Catalog with_extensions(const KnowledgeBase& kb) const;

    const PatternTemplate* find(const std::string& name) const;
    const PatternTemplate& require(const std::string& name) const;
    std::vector<std::string> names() const;

    // Fill the target slot with an existing element and mint `nu` identifiers
    // for everything else. Deterministic in (template, target, ctr).
    Instantiation instantiate_safety(const PatternTemplate& tmpl, const KnowledgeBase& kb,
                                     const std::string& target, int ctr) const;
    Instantiation instantiate_security(const PatternTemplate& tmpl, const KnowledgeBase& kb,
                                       const SecurityPlacement& placement, int ctr) const;

    // Role accessors for a placed instance (positional via its template).
    std::optional<std::string> target_of(const PatternInstance& inst) const;
    std::vector<std::string> checkers_of(const PatternInstance& inst) const;
    std::optional<std::string> bus_of(const PatternInstance& inst) const;
    std::optional<std::string> protected_of(const PatternInstance& inst) const;

    const SafetyIntentSpec* safety_intent_of(const std::string& name) const;
    const std::set<ThreatType>* security_intent_of(const std::string& name) const;

private:
    std::map<std::string, PatternTemplate> templates_;
};

}  // namespace copat

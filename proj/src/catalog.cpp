#include "copat/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace copat {

const RoleSlot* PatternTemplate::role_by_name(const std::string& n) const {
    for (const auto& r : roles)
        if (r.name == n) return &r;
    return nullptr;
}

std::vector<std::string> PatternTemplate::roles_of(Role r) const {
    std::vector<std::string> out;
    for (const auto& slot : roles)
        if (slot.role == r) out.push_back(slot.name);
    return out;
}

namespace {

PatternTemplate dual_self_checking_pair_fs() {
    PatternTemplate t;
    t.name = "dualSelfCheckingPairFS";
    t.kind = PatternKind::Safety;
    t.roles = {{"pr1", Role::Target},    {"se1", Role::Redundant}, {"fd1", Role::Checker},
               {"pr2", Role::Redundant}, {"se2", Role::Redundant}, {"fd2", Role::Checker}};
    t.input_slots = {"inp1", "inp2", "inp3", "inp4"};
    t.internal_slots = {"int1", "int2", "int3", "int4", "int5"};
    t.output_slots = {"out1", "out2", "fs"};
    t.wiring.inputs = {{"inp1", "pr1"}, {"inp2", "se1"}, {"inp3", "pr2"}, {"inp4", "se2"}};
    t.wiring.internals = {{"int1", "pr1", "fd1"},
                          {"int2", "se1", "fd1"},
                          {"int3", "pr2", "fd2"},
                          {"int4", "se2", "fd2"},
                          {"int5", "fd1", "fd2"}};  // take-over signal between detectors
    t.wiring.outputs = {{"out1", "fd1"}, {"out2", "fd2"}, {"fs", "fd2"}};
    t.safety_intent = SafetyIntentSpec{
        {FailureType::Err},
        {Asil::D, ToleranceLevel::all(1), ToleranceLevel::never(), ToleranceLevel::all(2)}};
    t.assumption_rules = {
        {AssumptionKind::AreIndependent, {"pr1", "se1", "pr2", "se2"}},
        {AssumptionKind::AreDecoupled, {"pr1", "se1", "pr2", "se2"}},
        {AssumptionKind::AreVerified, {"fd1", "fd2"}}};
    return t;
}

PatternTemplate monitor_actuator() {
    PatternTemplate t;
    t.name = "monitorActuator";
    t.kind = PatternKind::Safety;
    t.roles = {{"pr", Role::Target}, {"mon", Role::Checker}};
    t.input_slots = {"inp1", "inp2"};
    t.internal_slots = {"int1", "shut"};
    t.output_slots = {"out"};
    t.wiring.inputs = {{"inp1", "pr"}, {"inp2", "mon"}};
    t.wiring.internals = {{"int1", "pr", "mon"}, {"shut", "mon", "pr"}};
    t.wiring.outputs = {{"out", "pr"}};
    // Plausibility-check monitors miss a fraction of failures, hence `most`.
    t.safety_intent = SafetyIntentSpec{
        {FailureType::Err},
        {Asil::B, ToleranceLevel::never(), ToleranceLevel::most(1), ToleranceLevel::never()}};
    t.assumption_rules = {{AssumptionKind::AreVerified, {"mon"}}};
    return t;
}

PatternTemplate heterogeneous_duplex_fs() {
    PatternTemplate t;
    t.name = "heterogeneousDuplexFS";
    t.kind = PatternKind::Safety;
    t.roles = {{"pr", Role::Target}, {"se", Role::Redundant}, {"fd", Role::Checker}};
    t.input_slots = {"inp1", "inp2", "inp3"};
    t.internal_slots = {"int1", "int2"};
    t.output_slots = {"out", "fs"};
    t.wiring.inputs = {{"inp1", "pr"}, {"inp2", "se"}, {"inp3", "fd"}};
    t.wiring.internals = {{"int1", "pr", "fd"}, {"int2", "se", "fd"}};
    t.wiring.outputs = {{"out", "fd"}, {"fs", "fd"}};
    t.safety_intent = SafetyIntentSpec{
        {FailureType::Err},
        {Asil::D, ToleranceLevel::all(1), ToleranceLevel::never(), ToleranceLevel::all(2)}};
    t.assumption_rules = {{AssumptionKind::AreIndependent, {"pr", "se"}},
                          {AssumptionKind::AreDecoupled, {"pr", "se"}},
                          {AssumptionKind::AreVerified, {"fd"}}};
    return t;
}

PatternTemplate firewall() {
    PatternTemplate t;
    t.name = "firewall";
    t.kind = PatternKind::Security;
    t.roles = {{"bus", Role::Bus}, {"pr", Role::Protected}, {"fw", Role::Checker}};
    t.input_slots = {"inp1", "inp2"};
    t.output_slots = {"out1", "out2"};
    t.security_intent = std::set<ThreatType>{ThreatType::Ava, ThreatType::Int};
    t.assumption_rules = {{AssumptionKind::AreVerified, {"fw"}},
                          {AssumptionKind::HavePolicies, {"fw"}}};
    return t;
}

PatternTemplate security_monitor() {
    PatternTemplate t;
    t.name = "securityMonitor";
    t.kind = PatternKind::Security;
    t.roles = {{"pr", Role::Protected}, {"mon", Role::Checker}};
    t.input_slots = {"inp1", "inp2"};
    t.internal_slots = {"int1", "shut"};
    t.output_slots = {"out"};
    t.wiring.inputs = {{"inp1", "pr"}, {"inp2", "mon"}};
    t.wiring.internals = {{"int1", "pr", "mon"}, {"shut", "mon", "pr"}};
    t.wiring.outputs = {{"out", "pr"}};
    t.security_intent = std::set<ThreatType>{ThreatType::Int};
    t.assumption_rules = {{AssumptionKind::AreVerified, {"mon"}},
                          {AssumptionKind::HavePolicies, {"mon"}}};
    return t;
}

// Stubs share a minimal target/redundant/checker shape; intents must come
// from user facts before they can be explored or placed.
PatternTemplate stub(const std::string& name) {
    PatternTemplate t;
    t.name = name;
    t.kind = PatternKind::Safety;
    t.roles = {{"pr", Role::Target}, {"red", Role::Redundant}, {"ckr", Role::Checker}};
    t.input_slots = {"inp"};
    t.internal_slots = {"int"};
    t.output_slots = {"out"};
    t.wiring.inputs = {{"inp", "red"}};
    t.wiring.internals = {{"int", "pr", "ckr"}};
    t.wiring.outputs = {{"out", "ckr"}};
    t.stub = true;
    return t;
}

// nuSe1, nuFd1, nuPr1, nuSe1b, ... : capitalized slot stem + counter, with a
// letter suffix when the stem repeats within one instance.
std::string stem_of(const std::string& slot) {
    size_t end = slot.size();
    while (end > 0 && std::isdigit(static_cast<unsigned char>(slot[end - 1]))) --end;
    std::string stem = slot.substr(0, end);
    if (!stem.empty()) stem[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(stem[0])));
    return stem;
}

class FreshNames {
public:
    explicit FreshNames(int ctr) : ctr_(ctr) {}

    std::string mint(const std::string& slot) {
        std::string base = "nu" + stem_of(slot) + std::to_string(ctr_);
        std::string name = base;
        char suffix = 'b';
        while (used_.count(name)) {
            name = base + suffix;
            ++suffix;
        }
        used_.insert(name);
        return name;
    }

private:
    int ctr_;
    std::set<std::string> used_;
};

}  // namespace

Catalog Catalog::builtin() {
    Catalog c;
    for (auto&& t : {dual_self_checking_pair_fs(), monitor_actuator(), heterogeneous_duplex_fs(),
                     firewall(), security_monitor(), stub("acceptanceVoting"),
                     stub("homogeneousDuplex"), stub("simplex"), stub("tmr"), stub("watchdog")})
        c.templates_.emplace(t.name, t);
    return c;
}

Catalog Catalog::with_extensions(const KnowledgeBase& kb) const {
    Catalog out = *this;
    // Structure declarations use the schematic instance id `idpat`.
    for (const auto& inst : kb.instances) {
        if (inst.id != "idpat") continue;
        PatternTemplate t;
        if (auto it = out.templates_.find(inst.name); it != out.templates_.end()) t = it->second;
        t.name = inst.name;
        t.kind = inst.kind;
        t.roles.clear();
        for (size_t i = 0; i < inst.components.size(); ++i) {
            Role r = Role::Redundant;
            if (i == 0) r = inst.kind == PatternKind::Safety ? Role::Target : Role::Protected;
            if (i + 1 == inst.components.size() && inst.components.size() > 1) r = Role::Checker;
            t.roles.push_back({inst.components[i], r});
        }
        t.input_slots = inst.input_ch;
        t.internal_slots = inst.internal_ch;
        t.output_slots = inst.output_ch;
        t.wiring = {};
        out.templates_[t.name] = t;
    }
    for (const auto& f : kb.safety_intents) {
        auto it = out.templates_.find(f.pattern);
        if (it == out.templates_.end()) {
            PatternTemplate t = stub(f.pattern);
            t.name = f.pattern;
            t.stub = false;
            t.safety_intent = f.intent;
            out.templates_.emplace(f.pattern, std::move(t));
        } else {
            it->second.safety_intent = f.intent;
            it->second.stub = false;
        }
    }
    for (const auto& f : kb.security_intents) {
        auto it = out.templates_.find(f.pattern);
        if (it == out.templates_.end()) {
            PatternTemplate t = stub(f.pattern);
            t.name = f.pattern;
            t.kind = PatternKind::Security;
            t.stub = false;
            t.security_intent = f.threat_types;
            out.templates_.emplace(f.pattern, std::move(t));
        } else {
            it->second.security_intent = f.threat_types;
            it->second.stub = false;
        }
    }
    return out;
}

const PatternTemplate* Catalog::find(const std::string& name) const {
    auto it = templates_.find(name);
    return it == templates_.end() ? nullptr : &it->second;
}

const PatternTemplate& Catalog::require(const std::string& name) const {
    const auto* t = find(name);
    if (!t) throw CatalogError(CatalogError::Code::UnknownPattern,
                               "unknown pattern '" + name + "'");
    return *t;
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : templates_) out.push_back(name);
    return out;
}

namespace {

// First outgoing/incoming channels of an element, ordered by channel id.
std::vector<const Channel*> channels_into(const KnowledgeBase& kb, const std::string& cp) {
    std::vector<const Channel*> out;
    for (const auto& ch : kb.channels)
        if (ch.sink == cp) out.push_back(&ch);
    std::sort(out.begin(), out.end(),
              [](const Channel* a, const Channel* b) { return a->id < b->id; });
    return out;
}

std::vector<const Channel*> channels_out_of(const KnowledgeBase& kb, const std::string& cp) {
    std::vector<const Channel*> out;
    for (const auto& ch : kb.channels)
        if (ch.source == cp) out.push_back(&ch);
    std::sort(out.begin(), out.end(),
              [](const Channel* a, const Channel* b) { return a->id < b->id; });
    return out;
}

// Default hardware for generated checkers: the target's host, or for a
// channel target the host of the channel's writing component.
std::optional<std::string> default_host(const KnowledgeBase& kb, const std::string& target) {
    if (kb.component(target)) return kb.host_of(target);
    if (const auto* ch = kb.channel(target)) return kb.host_of(ch->source);
    return std::nullopt;
}

}  // namespace

Instantiation Catalog::instantiate_safety(const PatternTemplate& tmpl, const KnowledgeBase& kb,
                                          const std::string& target, int ctr) const {
    if (tmpl.kind != PatternKind::Safety)
        throw CatalogError(CatalogError::Code::BadPlacement,
                           "'" + tmpl.name + "' is not a safety pattern");
    if (!tmpl.safety_intent)
        throw CatalogError(CatalogError::Code::MissingIntent,
                           "pattern '" + tmpl.name + "' has no intent");
    if (!kb.component(target) && !kb.channel(target))
        throw CatalogError(CatalogError::Code::UnknownTarget,
                           "target '" + target + "' is neither component nor channel");

    FreshNames fresh(ctr);
    Instantiation out;
    PatternInstance& inst = out.instance;
    inst.id = fresh.mint("safPat");
    inst.name = tmpl.name;
    inst.kind = PatternKind::Safety;
    inst.prov = Provenance::Generated;

    std::map<std::string, std::string> fill;  // role slot -> element id
    for (const auto& slot : tmpl.roles) {
        std::string element = slot.role == Role::Target ? target : fresh.mint(slot.name);
        fill[slot.name] = element;
        inst.components.push_back(element);
        if (slot.role != Role::Target) {
            out.delta.add(Component{element, Provenance::Generated});
            if (slot.role == Role::Checker) {
                if (auto host = default_host(kb, target))
                    out.delta.add(Deployment{element, *host, Provenance::Generated});
            }
        }
    }

    std::map<std::string, std::string> channel_ids;  // channel slot -> fresh id
    for (const auto& s : tmpl.input_slots) channel_ids[s] = fresh.mint(s);
    for (const auto& s : tmpl.internal_slots) channel_ids[s] = fresh.mint(s);
    for (const auto& s : tmpl.output_slots) channel_ids[s] = fresh.mint(s);
    for (const auto& s : tmpl.input_slots) inst.input_ch.push_back(channel_ids[s]);
    for (const auto& s : tmpl.internal_slots) inst.internal_ch.push_back(channel_ids[s]);
    for (const auto& s : tmpl.output_slots) inst.output_ch.push_back(channel_ids[s]);

    // Inputs tap the element's existing input source; the target slot keeps
    // its original inputs untouched. A channel target is tapped at its writer
    // and re-targeted at its reader.
    const Channel* target_ch = kb.channel(target);
    std::string input_source;
    if (target_ch) {
        input_source = target_ch->source;
    } else {
        auto inputs = channels_into(kb, target);
        input_source = inputs.empty() ? "" : inputs.front()->source;
    }
    for (const auto& w : tmpl.wiring.inputs) {
        const std::string& to = fill[w.to_role];
        if (to == target || input_source.empty()) continue;
        out.delta.add(Channel{channel_ids[w.slot], input_source, to, Provenance::Generated});
    }
    for (const auto& w : tmpl.wiring.internals) {
        const std::string &from = fill[w.from_role], &to = fill[w.to_role];
        if (from == to) continue;
        if ((kb.component(from) || out.delta.component(from)) &&
            (kb.component(to) || out.delta.component(to)))
            out.delta.add(Channel{channel_ids[w.slot], from, to, Provenance::Generated});
    }
    // Pattern outputs re-target the original sink of the target's output.
    std::string output_sink;
    if (target_ch) {
        output_sink = target_ch->sink;
    } else {
        auto outputs = channels_out_of(kb, target);
        output_sink = outputs.empty() ? "" : outputs.front()->sink;
    }
    for (const auto& w : tmpl.wiring.outputs) {
        const std::string& from = fill[w.from_role];
        if (from == target || output_sink.empty()) continue;
        out.delta.add(Channel{channel_ids[w.slot], from, output_sink, Provenance::Generated});
    }

    for (const auto& rule : tmpl.assumption_rules) {
        Assumption as;
        as.pattern = tmpl.name;
        as.kind = rule.kind;
        for (const auto& role : rule.role_subset) as.subjects.push_back(fill[role]);
        as.prov = Provenance::Generated;
        out.assumptions.push_back(as);
        out.delta.add(as);
    }

    out.delta.add(inst);
    return out;
}

Instantiation Catalog::instantiate_security(const PatternTemplate& tmpl, const KnowledgeBase& kb,
                                            const SecurityPlacement& placement, int ctr) const {
    if (tmpl.kind != PatternKind::Security)
        throw CatalogError(CatalogError::Code::BadPlacement,
                           "'" + tmpl.name + "' is not a security pattern");
    if (!tmpl.security_intent)
        throw CatalogError(CatalogError::Code::MissingIntent,
                           "pattern '" + tmpl.name + "' has no intent");

    FreshNames fresh(ctr);
    Instantiation out;
    PatternInstance& inst = out.instance;
    inst.id = fresh.mint("secPat");
    inst.name = tmpl.name;
    inst.kind = PatternKind::Security;
    inst.prov = Provenance::Generated;

    std::map<std::string, std::string> fill;
    const bool on_bus = tmpl.role_by_name("bus") != nullptr;
    if (on_bus) {
        const auto* bus = kb.hardware_unit(placement.bus);
        if (!bus || (bus->kind != HardwareKind::Can && bus->kind != HardwareKind::Wireless))
            throw CatalogError(CatalogError::Code::BadPlacement,
                               "'" + placement.bus + "' is not a communication medium");
        const auto* unit = kb.hardware_unit(placement.unit);
        if (!unit || unit->kind == HardwareKind::Can || unit->kind == HardwareKind::Wireless)
            throw CatalogError(CatalogError::Code::BadPlacement,
                               "'" + placement.unit + "' is not a hardware unit");
    } else if (!kb.component(placement.component)) {
        throw CatalogError(CatalogError::Code::UnknownTarget,
                           "'" + placement.component + "' is not a component");
    }

    for (const auto& slot : tmpl.roles) {
        std::string element;
        switch (slot.role) {
            case Role::Bus: element = placement.bus; break;
            case Role::Protected:
                element = on_bus ? placement.unit : placement.component;
                break;
            default: element = fresh.mint(slot.name); break;
        }
        fill[slot.name] = element;
        inst.components.push_back(element);
        if (slot.role == Role::Checker) {
            out.delta.add(Component{element, Provenance::Generated});
            std::optional<std::string> host;
            if (on_bus)
                host = placement.unit;  // the guarded attachment point
            else
                host = kb.host_of(placement.component);
            if (host) out.delta.add(Deployment{element, *host, Provenance::Generated});
        }
    }

    std::map<std::string, std::string> channel_ids;
    for (const auto& s : tmpl.input_slots) channel_ids[s] = fresh.mint(s);
    for (const auto& s : tmpl.internal_slots) channel_ids[s] = fresh.mint(s);
    for (const auto& s : tmpl.output_slots) channel_ids[s] = fresh.mint(s);
    for (const auto& s : tmpl.input_slots) inst.input_ch.push_back(channel_ids[s]);
    for (const auto& s : tmpl.internal_slots) inst.internal_ch.push_back(channel_ids[s]);
    for (const auto& s : tmpl.output_slots) inst.output_ch.push_back(channel_ids[s]);

    // Only component-to-component wiring yields architecture channels; the
    // firewall's bus-side taps stay schematic.
    for (const auto& w : tmpl.wiring.internals) {
        const std::string &from = fill[w.from_role], &to = fill[w.to_role];
        if ((kb.component(from) || out.delta.component(from)) &&
            (kb.component(to) || out.delta.component(to)))
            out.delta.add(Channel{channel_ids[w.slot], from, to, Provenance::Generated});
    }

    for (const auto& rule : tmpl.assumption_rules) {
        Assumption as;
        as.pattern = tmpl.name;
        as.kind = rule.kind;
        for (const auto& role : rule.role_subset) as.subjects.push_back(fill[role]);
        as.prov = Provenance::Generated;
        out.assumptions.push_back(as);
        out.delta.add(as);
    }

    out.delta.add(inst);
    return out;
}

namespace {

std::optional<std::string> element_of_role(const Catalog& cat, const PatternInstance& inst,
                                           Role role) {
    const auto* tmpl = cat.find(inst.name);
    if (!tmpl) return std::nullopt;
    for (size_t i = 0; i < tmpl->roles.size() && i < inst.components.size(); ++i)
        if (tmpl->roles[i].role == role) return inst.components[i];
    return std::nullopt;
}

}  // namespace

std::optional<std::string> Catalog::target_of(const PatternInstance& inst) const {
    return element_of_role(*this, inst, Role::Target);
}

std::vector<std::string> Catalog::checkers_of(const PatternInstance& inst) const {
    std::vector<std::string> out;
    const auto* tmpl = find(inst.name);
    if (!tmpl) return out;
    for (size_t i = 0; i < tmpl->roles.size() && i < inst.components.size(); ++i)
        if (tmpl->roles[i].role == Role::Checker) out.push_back(inst.components[i]);
    return out;
}

std::optional<std::string> Catalog::bus_of(const PatternInstance& inst) const {
    return element_of_role(*this, inst, Role::Bus);
}

std::optional<std::string> Catalog::protected_of(const PatternInstance& inst) const {
    return element_of_role(*this, inst, Role::Protected);
}

const SafetyIntentSpec* Catalog::safety_intent_of(const std::string& name) const {
    const auto* t = find(name);
    return t && t->safety_intent ? &*t->safety_intent : nullptr;
}

const std::set<ThreatType>* Catalog::security_intent_of(const std::string& name) const {
    const auto* t = find(name);
    return t && t->security_intent ? &*t->security_intent : nullptr;
}

}  // namespace copat

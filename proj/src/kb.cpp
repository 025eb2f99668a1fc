#include "copat/kb.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace copat {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& v, const std::string& id) {
    for (const auto& f : v)
        if (f.id == id) return &f;
    return nullptr;
}

template <typename T>
void add_unique(std::vector<T>& v, T f) {
    if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(std::move(f));
}

}  // namespace

bool KnowledgeBase::empty() const {
    return components.empty() && subcomponents.empty() && channels.empty() && flows.empty() &&
           hardware.empty() && publics.empty() && deployments.empty() && hazards.empty() &&
           asil_overrides.empty() && faults.empty() && failures.empty() && triggers.empty() &&
           cut_sets.empty() && mcs_links.empty() && goals.empty() && safety_intents.empty() &&
           security_intents.empty() && instances.empty() && assumptions.empty() &&
           threats.empty() && explores.empty() && extensions.empty();
}

const Component* KnowledgeBase::component(const std::string& id) const {
    return find_by_id(components, id);
}
const Channel* KnowledgeBase::channel(const std::string& id) const {
    return find_by_id(channels, id);
}
const HardwareUnit* KnowledgeBase::hardware_unit(const std::string& id) const {
    return find_by_id(hardware, id);
}
const Hazard* KnowledgeBase::hazard(const std::string& id) const {
    return find_by_id(hazards, id);
}
const Fault* KnowledgeBase::fault(const std::string& id) const {
    return find_by_id(faults, id);
}
const Failure* KnowledgeBase::failure(const std::string& id) const {
    return find_by_id(failures, id);
}
const MinimalCutSet* KnowledgeBase::cut_set(const std::string& id) const {
    return find_by_id(cut_sets, id);
}
const SafetyGoal* KnowledgeBase::goal(const std::string& id) const {
    return find_by_id(goals, id);
}

bool KnowledgeBase::is_public(const std::string& hw) const {
    for (const auto& p : publics)
        if (p.hw == hw) return true;
    return false;
}

bool KnowledgeBase::is_bus(const std::string& hw) const {
    const auto* u = hardware_unit(hw);
    return u && (u->kind == HardwareKind::Can || u->kind == HardwareKind::Wireless);
}

std::optional<std::string> KnowledgeBase::host_of(const std::string& element) const {
    for (const auto& d : deployments)
        if (d.element == element) return d.host;
    return std::nullopt;
}

void KnowledgeBase::add(Component f) { add_unique(components, std::move(f)); }
void KnowledgeBase::add(SubComponent f) { add_unique(subcomponents, std::move(f)); }
void KnowledgeBase::add(Channel f) { add_unique(channels, std::move(f)); }
void KnowledgeBase::add(InformationFlow f) { add_unique(flows, std::move(f)); }
void KnowledgeBase::add(HardwareUnit f) { add_unique(hardware, std::move(f)); }
void KnowledgeBase::add(PublicMark f) { add_unique(publics, std::move(f)); }
void KnowledgeBase::add(Deployment f) { add_unique(deployments, std::move(f)); }
void KnowledgeBase::add(Hazard f) { add_unique(hazards, std::move(f)); }
void KnowledgeBase::add(AsilOverride f) { add_unique(asil_overrides, std::move(f)); }
void KnowledgeBase::add(Fault f) { add_unique(faults, std::move(f)); }
void KnowledgeBase::add(Failure f) { add_unique(failures, std::move(f)); }
void KnowledgeBase::add(FaultTrigger f) { add_unique(triggers, std::move(f)); }
void KnowledgeBase::add(MinimalCutSet f) { add_unique(cut_sets, std::move(f)); }
void KnowledgeBase::add(McsToHazard f) { add_unique(mcs_links, std::move(f)); }
void KnowledgeBase::add(SafetyGoal f) { add_unique(goals, std::move(f)); }
void KnowledgeBase::add(SafetyIntentFact f) { add_unique(safety_intents, std::move(f)); }
void KnowledgeBase::add(SecurityIntentFact f) { add_unique(security_intents, std::move(f)); }
void KnowledgeBase::add(PatternInstance f) { add_unique(instances, std::move(f)); }
void KnowledgeBase::add(Assumption f) { add_unique(assumptions, std::move(f)); }
void KnowledgeBase::add(ThreatRecord f) { add_unique(threats, std::move(f)); }
void KnowledgeBase::add(ExploreMark f) { add_unique(explores, std::move(f)); }
void KnowledgeBase::add(ExtensionFact f) { add_unique(extensions, std::move(f)); }

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == DiagSeverity::Error; });
}

namespace {

struct Validator {
    const KnowledgeBase& kb;
    std::vector<Diagnostic> out;

    void error(std::string code, std::string msg) {
        out.push_back({DiagSeverity::Error, std::move(code), std::move(msg)});
    }
    void warn(std::string code, std::string msg) {
        out.push_back({DiagSeverity::Warning, std::move(code), std::move(msg)});
    }

    bool is_element(const std::string& id) const {
        return kb.component(id) || kb.channel(id);
    }
    bool exists_anywhere(const std::string& id) const {
        return kb.component(id) || kb.channel(id) || kb.hardware_unit(id);
    }

    void check_unique_ids() {
        // One category per id: a token naming both a component and a channel
        // (or hardware unit) makes dep/ft references ambiguous.
        std::map<std::string, std::string> seen;
        auto claim = [&](const std::string& id, const std::string& cat) {
            auto [it, inserted] = seen.emplace(id, cat);
            if (!inserted && it->second != cat)
                error("ambiguous-id",
                      "identifier '" + id + "' used as both " + it->second + " and " + cat);
        };
        for (const auto& c : kb.components) claim(c.id, "component");
        for (const auto& c : kb.channels) claim(c.id, "channel");
        for (const auto& h : kb.hardware) claim(h.id, "hardware unit");

        auto dup = [&](const auto& v, const std::string& cat) {
            std::set<std::string> ids;
            for (const auto& f : v)
                if (!ids.insert(f.id).second)
                    error("duplicate-id", "conflicting definitions for " + cat + " '" + f.id + "'");
        };
        dup(kb.channels, "channel");
        dup(kb.flows, "information flow");
        dup(kb.hardware, "hardware unit");
        dup(kb.hazards, "hazard");
        dup(kb.faults, "fault");
        dup(kb.failures, "failure");
        dup(kb.cut_sets, "minimal cut set");
        dup(kb.goals, "safety goal");
        dup(kb.instances, "pattern instance");
    }

    void check_channels() {
        for (const auto& ch : kb.channels) {
            if (!kb.component(ch.source))
                error("dangling-ref", "channel '" + ch.id + "' source '" + ch.source +
                                          "' is not a component");
            if (!kb.component(ch.sink))
                error("dangling-ref",
                      "channel '" + ch.id + "' sink '" + ch.sink + "' is not a component");
            if (ch.source == ch.sink)
                error("self-loop", "channel '" + ch.id + "' connects '" + ch.source +
                                       "' to itself");
        }
    }

    void check_subcomponents() {
        for (const auto& sc : kb.subcomponents) {
            if (!kb.component(sc.child))
                error("dangling-ref", "subcp child '" + sc.child + "' is not a component");
            if (!kb.component(sc.parent))
                error("dangling-ref", "subcp parent '" + sc.parent + "' is not a component");
        }
        // Cycle check over child -> parent edges.
        std::map<std::string, std::vector<std::string>> parents;
        for (const auto& sc : kb.subcomponents) parents[sc.child].push_back(sc.parent);
        std::set<std::string> done;
        for (const auto& [start, _] : parents) {
            if (done.count(start)) continue;
            std::vector<std::string> stack{start};
            std::set<std::string> on_path{start};
            if (walk(start, parents, on_path, stack, done)) return;  // one cycle report suffices
        }
    }

    bool walk(const std::string& node, std::map<std::string, std::vector<std::string>>& parents,
              std::set<std::string>& on_path, std::vector<std::string>& stack,
              std::set<std::string>& done) {
        for (const auto& next : parents[node]) {
            if (on_path.count(next)) {
                std::ostringstream cycle;
                for (const auto& n : stack) cycle << n << " -> ";
                cycle << next;
                error("subcp-cycle", "sub-component cycle: " + cycle.str());
                return true;
            }
            if (done.count(next)) continue;
            on_path.insert(next);
            stack.push_back(next);
            if (walk(next, parents, on_path, stack, done)) return true;
            stack.pop_back();
            on_path.erase(next);
        }
        done.insert(node);
        return false;
    }

    void check_deployments() {
        for (const auto& d : kb.deployments) {
            const auto* host = kb.hardware_unit(d.host);
            if (!host) {
                error("dangling-ref", "deployment host '" + d.host + "' is not a hardware unit");
                continue;
            }
            if (kb.component(d.element)) {
                if (host->kind != HardwareKind::Ecu && host->kind != HardwareKind::Interface &&
                    host->kind != HardwareKind::Switch)
                    error("bad-deployment", "component '" + d.element + "' deployed on " +
                                                to_token(host->kind) + " '" + d.host + "'");
            } else if (kb.channel(d.element)) {
                if (host->kind != HardwareKind::Can && host->kind != HardwareKind::Wireless)
                    error("bad-deployment", "channel '" + d.element + "' deployed on " +
                                                to_token(host->kind) + " '" + d.host + "'");
            } else {
                error("dangling-ref",
                      "deployed element '" + d.element + "' is neither component nor channel");
            }
        }
    }

    void check_flows() {
        for (const auto& flow : kb.flows) {
            if (flow.channels.empty()) {
                error("empty-flow", "information flow '" + flow.id + "' lists no channels");
                continue;
            }
            for (const auto& c : flow.channels)
                if (!kb.channel(c))
                    warn("flow-unknown-channel",
                         "flow '" + flow.id + "' names unknown channel '" + c + "'");
            for (size_t i = 0; i + 1 < flow.channels.size(); ++i) {
                const auto* a = kb.channel(flow.channels[i]);
                const auto* b = kb.channel(flow.channels[i + 1]);
                if (a && b && a->sink != b->source)
                    warn("flow-chain-break", "flow '" + flow.id + "': channel '" + a->id +
                                                 "' ends at '" + a->sink + "' but '" + b->id +
                                                 "' starts at '" + b->source + "'");
            }
        }
    }

    void check_publics() {
        for (const auto& p : kb.publics) {
            const auto* u = kb.hardware_unit(p.hw);
            if (!u) {
                error("dangling-ref", "public mark on unknown hardware unit '" + p.hw + "'");
                continue;
            }
            if (u->kind != HardwareKind::Interface && u->kind != HardwareKind::Ecu &&
                u->kind != HardwareKind::Wireless)
                warn("unusual-public",
                     "public " + to_token(u->kind) + " '" + p.hw + "' is uncommon");
        }
    }

    void check_safety() {
        for (const auto& hz : kb.hazards)
            if (!kb.component(hz.system))
                error("dangling-ref",
                      "hazard '" + hz.id + "' system '" + hz.system + "' is not a component");
        for (const auto& ov : kb.asil_overrides)
            if (!kb.hazard(ov.hazard))
                error("dangling-ref", "asil override for unknown hazard '" + ov.hazard + "'");
        for (const auto& ft : kb.faults)
            if (!is_element(ft.locus))
                error("dangling-ref", "fault '" + ft.id + "' locus '" + ft.locus +
                                          "' is neither component nor channel");
        for (const auto& tr : kb.triggers) {
            if (!kb.fault(tr.fault))
                error("dangling-ref", "ft2fl references unknown fault '" + tr.fault + "'");
            if (!kb.failure(tr.failure))
                error("dangling-ref", "ft2fl references unknown failure '" + tr.failure + "'");
        }
        for (const auto& mcs : kb.cut_sets) {
            if (mcs.failures.empty())
                error("empty-mcs", "minimal cut set '" + mcs.id + "' is empty");
            for (const auto& fl : mcs.failures)
                if (!kb.failure(fl))
                    error("dangling-ref",
                          "cut set '" + mcs.id + "' references unknown failure '" + fl + "'");
        }
        for (const auto& link : kb.mcs_links) {
            if (link.mcs_list.empty())
                error("empty-mcs-list", "lmcs2hz for '" + link.hazard + "' lists no cut sets");
            if (!kb.hazard(link.hazard))
                error("dangling-ref", "lmcs2hz references unknown hazard '" + link.hazard + "'");
            for (const auto& m : link.mcs_list)
                if (!kb.cut_set(m))
                    error("dangling-ref", "lmcs2hz references unknown cut set '" + m + "'");
        }
        for (const auto& sg : kb.goals)
            if (!kb.hazard(sg.hazard))
                error("dangling-ref",
                      "safety goal '" + sg.id + "' references unknown hazard '" + sg.hazard + "'");
    }

    void check_threats() {
        for (const auto& th : kb.threats) {
            if (!is_element(th.target))
                error("dangling-ref", "threat '" + th.id + "' target '" + th.target +
                                          "' is neither component nor channel");
            if (!kb.hardware_unit(th.target_hw))
                error("dangling-ref", "threat '" + th.id + "' hardware '" + th.target_hw +
                                          "' is not a hardware unit");
            if (th.path) {
                if (th.path->hops.empty())
                    error("empty-path", "threat '" + th.id + "' carries an empty path");
                else if (th.path->hops.front() != th.target_hw)
                    error("path-head", "threat '" + th.id + "' path starts at '" +
                                           th.path->hops.front() + "', expected '" +
                                           th.target_hw + "'");
            }
        }
    }

    void check_instances() {
        for (const auto& inst : kb.instances) {
            for (const auto& cp : inst.components)
                if (!exists_anywhere(cp))
                    error("dangling-ref", "pattern instance '" + inst.id +
                                              "' references unknown element '" + cp + "'");
        }
        for (const auto& as : kb.assumptions)
            for (const auto& s : as.subjects)
                if (!exists_anywhere(s))
                    error("dangling-ref", "assumption on '" + as.pattern +
                                              "' references unknown element '" + s + "'");
    }
};

}  // namespace

std::vector<Diagnostic> validate(const KnowledgeBase& kb) {
    Validator v{kb, {}};
    v.check_unique_ids();
    v.check_channels();
    v.check_subcomponents();
    v.check_deployments();
    v.check_flows();
    v.check_publics();
    v.check_safety();
    v.check_threats();
    v.check_instances();
    return std::move(v.out);
}

namespace {

// Same id, different definition -> collision.
template <typename T>
void merge_ids(std::vector<T>& into, const std::vector<T>& from, const std::string& cat) {
    for (const auto& f : from) {
        const T* existing = nullptr;
        for (const auto& e : into)
            if (e.id == f.id) existing = &e;
        if (existing && !(*existing == f))
            throw IdCollisionError("conflicting definitions for " + cat + " '" + f.id + "'");
        if (!existing) into.push_back(f);
    }
}

template <typename T>
void merge_set(std::vector<T>& into, const std::vector<T>& from) {
    for (const auto& f : from)
        if (std::find(into.begin(), into.end(), f) == into.end()) into.push_back(f);
}

}  // namespace

KnowledgeBase merge(const KnowledgeBase& base, const KnowledgeBase& delta) {
    KnowledgeBase out = base;
    merge_ids(out.components, delta.components, "component");
    merge_set(out.subcomponents, delta.subcomponents);
    merge_ids(out.channels, delta.channels, "channel");
    merge_ids(out.flows, delta.flows, "information flow");
    merge_ids(out.hardware, delta.hardware, "hardware unit");
    merge_set(out.publics, delta.publics);
    merge_set(out.deployments, delta.deployments);
    merge_ids(out.hazards, delta.hazards, "hazard");
    merge_set(out.asil_overrides, delta.asil_overrides);
    merge_ids(out.faults, delta.faults, "fault");
    merge_ids(out.failures, delta.failures, "failure");
    merge_set(out.triggers, delta.triggers);
    merge_ids(out.cut_sets, delta.cut_sets, "minimal cut set");
    merge_set(out.mcs_links, delta.mcs_links);
    merge_ids(out.goals, delta.goals, "safety goal");
    for (const auto& f : delta.safety_intents) {
        const SafetyIntentFact* existing = nullptr;
        for (const auto& e : out.safety_intents)
            if (e.pattern == f.pattern) existing = &e;
        if (existing && !(*existing == f))
            throw IdCollisionError("conflicting safety intents for pattern '" + f.pattern + "'");
        if (!existing) out.safety_intents.push_back(f);
    }
    for (const auto& f : delta.security_intents) {
        const SecurityIntentFact* existing = nullptr;
        for (const auto& e : out.security_intents)
            if (e.pattern == f.pattern) existing = &e;
        if (existing && !(*existing == f))
            throw IdCollisionError("conflicting security intents for pattern '" + f.pattern + "'");
        if (!existing) out.security_intents.push_back(f);
    }
    merge_ids(out.instances, delta.instances, "pattern instance");
    merge_set(out.assumptions, delta.assumptions);
    merge_set(out.threats, delta.threats);
    merge_set(out.explores, delta.explores);
    merge_set(out.extensions, delta.extensions);
    return out;
}

}  // namespace copat

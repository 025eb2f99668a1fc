#include "copat/safety.hpp"

#include <algorithm>

namespace copat {

Asil hazard_asil(int severity, int exposure, int controllability) {
    if (severity <= 0) return Asil::QM;
    // Row: likelihood steps S+E, column C. QM everywhere below the diagonal.
    static constexpr Asil table[3][4][3] = {
        // S1
        {{Asil::QM, Asil::QM, Asil::QM},
         {Asil::QM, Asil::QM, Asil::QM},
         {Asil::QM, Asil::QM, Asil::A},
         {Asil::QM, Asil::A, Asil::B}},
        // S2
        {{Asil::QM, Asil::QM, Asil::QM},
         {Asil::QM, Asil::QM, Asil::A},
         {Asil::QM, Asil::A, Asil::B},
         {Asil::A, Asil::B, Asil::C}},
        // S3
        {{Asil::QM, Asil::QM, Asil::A},
         {Asil::QM, Asil::A, Asil::B},
         {Asil::A, Asil::B, Asil::C},
         {Asil::B, Asil::C, Asil::D}},
    };
    severity = std::clamp(severity, 1, 3);
    exposure = std::clamp(exposure, 1, 4);
    controllability = std::clamp(controllability, 1, 3);
    return table[severity - 1][exposure - 1][controllability - 1];
}

Asil hazard_asil(const KnowledgeBase& kb, const Hazard& hz) {
    for (const auto& ov : kb.asil_overrides)
        if (ov.hazard == hz.id) return ov.level;
    return hazard_asil(hz.severity, hz.exposure, hz.controllability);
}

bool tolerance_leq(const ToleranceLevel& a, const ToleranceLevel& b) {
    using K = ToleranceLevel::Kind;
    if (a.kind == K::Never) return true;
    if (a.kind == b.kind) return a.count == b.count;
    return a.kind == K::Most && b.kind == K::All && a.count == b.count;
}

ToleranceLevel tolerance_min(const ToleranceLevel& a, const ToleranceLevel& b) {
    if (tolerance_leq(a, b)) return a;
    if (tolerance_leq(b, a)) return b;
    if (a.kind == b.kind) return a.count < b.count ? a : b;
    return ToleranceLevel::never();
}

ToleranceLevel tolerance_max(const ToleranceLevel& a, const ToleranceLevel& b) {
    auto rank = [](const ToleranceLevel& t) {
        return std::pair<int, int>{static_cast<int>(t.kind), t.count};
    };
    return rank(a) < rank(b) ? b : a;
}

IntentAttrs min_intent(const std::vector<IntentAttrs>& attrs) {
    IntentAttrs out = attrs.at(0);
    for (size_t i = 1; i < attrs.size(); ++i) {
        out.asil = std::min(out.asil, attrs[i].asil);
        out.fail_op = tolerance_min(out.fail_op, attrs[i].fail_op);
        out.fail_silent = tolerance_min(out.fail_silent, attrs[i].fail_silent);
        out.fail_safe = tolerance_min(out.fail_safe, attrs[i].fail_safe);
    }
    return out;
}

namespace {

IntentAttrs max_intent(const IntentAttrs& a, const IntentAttrs& b) {
    IntentAttrs out;
    out.asil = std::max(a.asil, b.asil);
    out.fail_op = tolerance_max(a.fail_op, b.fail_op);
    out.fail_silent = tolerance_max(a.fail_silent, b.fail_silent);
    out.fail_safe = tolerance_max(a.fail_safe, b.fail_safe);
    return out;
}

}  // namespace

SafetyDerivation derive_avoidance(const KnowledgeBase& kb, const Catalog& catalog) {
    SafetyDerivation out;

    // avoided: a placed safety pattern on the faulty element whose intent
    // covers the failure type.
    for (const auto& inst : kb.instances) {
        if (inst.kind != PatternKind::Safety || inst.id == "idpat") continue;
        const auto* intent = catalog.safety_intent_of(inst.name);
        auto target = catalog.target_of(inst);
        if (!intent || !target) continue;
        for (const auto& ft : kb.faults) {
            if (ft.locus != *target) continue;
            for (const auto& tr : kb.triggers) {
                if (tr.fault != ft.id) continue;
                const auto* fl = kb.failure(tr.failure);
                if (!fl || !intent->fail_types.count(fl->type)) continue;
                AvoidanceFact fact{fl->id, inst.id, intent->attrs};
                if (std::find(out.avoided.begin(), out.avoided.end(), fact) == out.avoided.end())
                    out.avoided.push_back(fact);
            }
        }
    }

    // avoidedMCS: at least one member failure avoided; attributes are the
    // strongest available across the patterns covering its members.
    for (const auto& mcs : kb.cut_sets) {
        bool any = false;
        IntentAttrs best{};
        for (const auto& flid : mcs.failures)
            for (const auto& fact : out.avoided)
                if (fact.failure == flid) {
                    best = any ? max_intent(best, fact.attrs) : fact.attrs;
                    any = true;
                }
        if (any) out.avoided_mcs.emplace(mcs.id, best);
    }

    // tol: every failure triggered by the fault is avoided.
    for (const auto& ft : kb.faults) {
        std::vector<IntentAttrs> per_failure;
        bool all = true, has_failures = false;
        for (const auto& tr : kb.triggers) {
            if (tr.fault != ft.id) continue;
            has_failures = true;
            bool avoided = false;
            IntentAttrs best{};
            for (const auto& fact : out.avoided)
                if (fact.failure == tr.failure) {
                    best = avoided ? max_intent(best, fact.attrs) : fact.attrs;
                    avoided = true;
                }
            if (!avoided) {
                all = false;
                break;
            }
            per_failure.push_back(best);
        }
        if (has_failures && all) out.tolerated.emplace(ft.id, min_intent(per_failure));
    }

    // ctl: every cut set in every list leading to the hazard is avoided;
    // the control attributes are the minimum across those cut sets.
    for (const auto& hz : kb.hazards) {
        std::vector<IntentAttrs> per_mcs;
        bool linked = false, all = true;
        for (const auto& link : kb.mcs_links) {
            if (link.hazard != hz.id) continue;
            linked = true;
            for (const auto& mid : link.mcs_list) {
                auto it = out.avoided_mcs.find(mid);
                if (it == out.avoided_mcs.end()) {
                    all = false;
                    break;
                }
                per_mcs.push_back(it->second);
            }
            if (!all) break;
        }
        if (linked && all && !per_mcs.empty())
            out.controlled.emplace(hz.id, min_intent(per_mcs));
    }

    return out;
}

std::set<std::string> check_goals(const KnowledgeBase& kb,
                                  const std::map<std::string, IntentAttrs>& controlled) {
    std::set<std::string> satisfied;
    for (const auto& sg : kb.goals) {
        const auto* hz = kb.hazard(sg.hazard);
        if (!hz) continue;
        auto it = controlled.find(sg.hazard);
        if (it == controlled.end()) continue;
        const IntentAttrs& ctl = it->second;
        if (ctl.asil < hazard_asil(kb, *hz)) continue;
        if (tolerance_leq(sg.fail_op, ctl.fail_op) &&
            tolerance_leq(sg.fail_silent, ctl.fail_silent) &&
            tolerance_leq(sg.fail_safe, ctl.fail_safe))
            satisfied.insert(sg.id);
    }
    return satisfied;
}

std::vector<SafetyCandidate> candidate_safety_patterns(const KnowledgeBase& kb,
                                                       const Catalog& catalog,
                                                       const std::vector<std::string>& explore) {
    std::set<SafetyCandidate> out;
    for (const auto& name : explore) {
        const auto& tmpl = catalog.require(name);
        if (tmpl.kind != PatternKind::Safety) continue;
        if (!tmpl.safety_intent)
            throw CatalogError(CatalogError::Code::MissingIntent,
                               "explored pattern '" + name + "' has no intent");
        const auto& intent = *tmpl.safety_intent;
        for (const auto& fl : kb.failures) {
            if (!intent.fail_types.count(fl.type)) continue;
            // Hazards reached from the failure through cut-set membership.
            bool asil_ok = false;
            for (const auto& mcs : kb.cut_sets) {
                if (std::find(mcs.failures.begin(), mcs.failures.end(), fl.id) ==
                    mcs.failures.end())
                    continue;
                for (const auto& link : kb.mcs_links) {
                    if (std::find(link.mcs_list.begin(), link.mcs_list.end(), mcs.id) ==
                        link.mcs_list.end())
                        continue;
                    const auto* hz = kb.hazard(link.hazard);
                    if (hz && intent.attrs.asil >= hazard_asil(kb, *hz)) asil_ok = true;
                }
            }
            if (!asil_ok) continue;
            for (const auto& tr : kb.triggers) {
                if (tr.failure != fl.id) continue;
                const auto* ft = kb.fault(tr.fault);
                if (ft) out.insert({fl.id, name, ft->locus});
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace copat

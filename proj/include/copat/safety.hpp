#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "copat/catalog.hpp"
#include "copat/kb.hpp"

namespace copat {

// ISO 26262 style ASIL determination from severity/exposure/controllability.
Asil hazard_asil(int severity, int exposure, int controllability);

// Table value, or the explicit asil(...) override when present.
Asil hazard_asil(const KnowledgeBase& kb, const Hazard& hz);

// Partial order on tolerance levels: a <= b when b is at least as strong.
// never is the bottom; most(X) <= all(X); levels with the same quantifier but
// different X are incomparable (X marks a behavioural milestone, not a
// monotone strength).
bool tolerance_leq(const ToleranceLevel& a, const ToleranceLevel& b);

// Pairwise minimum: comparable pairs take the weaker side, same-quantifier
// pairs take the smaller X, cross-quantifier incomparables collapse to never.
ToleranceLevel tolerance_min(const ToleranceLevel& a, const ToleranceLevel& b);

// Pairwise maximum by quantifier rank (never < most < all), then X.
ToleranceLevel tolerance_max(const ToleranceLevel& a, const ToleranceLevel& b);

// Elementwise minimum over intent attributes; list must be non-empty.
IntentAttrs min_intent(const std::vector<IntentAttrs>& attrs);

// Failure avoided by a placed pattern carrying these intent attributes.
struct AvoidanceFact {
    std::string failure;
    std::string instance;
    IntentAttrs attrs;

    friend bool operator==(const AvoidanceFact&, const AvoidanceFact&) = default;
};

struct SafetyDerivation {
    std::vector<AvoidanceFact> avoided;
    std::map<std::string, IntentAttrs> avoided_mcs;  // strongest attrs per cut set
    std::map<std::string, IntentAttrs> tolerated;    // fault -> attrs
    std::map<std::string, IntentAttrs> controlled;   // hazard -> minimal attrs
};

// Fixpoint of the four safety definitions: avoided failures, avoided cut
// sets, tolerated faults, controlled hazards.
SafetyDerivation derive_avoidance(const KnowledgeBase& kb, const Catalog& catalog);

// Goals whose hazard is controlled with attributes at least as strong as
// required: ASIL >= the hazard's ASIL and each tolerance slot >= the goal's.
std::set<std::string> check_goals(const KnowledgeBase& kb,
                                  const std::map<std::string, IntentAttrs>& controlled);

struct SafetyCandidate {
    std::string failure;
    std::string pattern;
    std::string target;  // faulty component or channel

    friend bool operator==(const SafetyCandidate&, const SafetyCandidate&) = default;
    friend auto operator<=>(const SafetyCandidate&, const SafetyCandidate&) = default;
};

// One candidate per (failure, explored pattern) whose intent covers the
// failure type and whose ASIL reaches some hazard linked to the failure.
// Throws CatalogError::MissingIntent when an explored pattern has no intent.
std::vector<SafetyCandidate> candidate_safety_patterns(const KnowledgeBase& kb,
                                                       const Catalog& catalog,
                                                       const std::vector<std::string>& explore);

}  // namespace copat

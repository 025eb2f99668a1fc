#include "copat/types.hpp"

#include <cctype>

namespace copat {

std::string to_token(FailureType t) {
    return t == FailureType::Err ? "err" : "loss";
}

std::string to_token(HardwareKind k) {
    switch (k) {
        case HardwareKind::Ecu: return "ecu";
        case HardwareKind::Can: return "can";
        case HardwareKind::Interface: return "interface";
        case HardwareKind::Wireless: return "wireless";
        case HardwareKind::Switch: return "switch";
        case HardwareKind::Actuator: return "actuator";
    }
    return "ecu";
}

std::string to_token(ThreatType t) {
    switch (t) {
        case ThreatType::Con: return "con";
        case ThreatType::Int: return "int";
        case ThreatType::Ava: return "ava";
    }
    return "con";
}

std::string to_token(ThreatSeverity s) {
    switch (s) {
        case ThreatSeverity::Neg: return "neg";
        case ThreatSeverity::Mod: return "mod";
        case ThreatSeverity::Maj: return "maj";
        case ThreatSeverity::Sev: return "sev";
    }
    return "neg";
}

std::string to_token(Asil a) {
    switch (a) {
        case Asil::QM: return "qm";
        case Asil::A: return "a";
        case Asil::B: return "b";
        case Asil::C: return "c";
        case Asil::D: return "d";
    }
    return "qm";
}

std::string to_token(AssumptionKind k) {
    switch (k) {
        case AssumptionKind::AreIndependent: return "are_independent";
        case AssumptionKind::AreDecoupled: return "are_decoupled";
        case AssumptionKind::AreVerified: return "are_verified";
        case AssumptionKind::HavePolicies: return "have_policies";
    }
    return "are_verified";
}

std::string to_token(const ToleranceLevel& t) {
    switch (t.kind) {
        case ToleranceLevel::Kind::Never: return "never";
        case ToleranceLevel::Kind::Most: return "most" + std::to_string(t.count) + "fail";
        case ToleranceLevel::Kind::All: return "all" + std::to_string(t.count) + "fail";
    }
    return "never";
}

std::optional<FailureType> failure_type_from(const std::string& tok) {
    if (tok == "err") return FailureType::Err;
    if (tok == "loss") return FailureType::Loss;
    return std::nullopt;
}

std::optional<ThreatType> threat_type_from(const std::string& tok) {
    if (tok == "con") return ThreatType::Con;
    if (tok == "int") return ThreatType::Int;
    if (tok == "ava") return ThreatType::Ava;
    return std::nullopt;
}

std::optional<ThreatSeverity> threat_severity_from(const std::string& tok) {
    if (tok == "neg") return ThreatSeverity::Neg;
    if (tok == "mod") return ThreatSeverity::Mod;
    if (tok == "maj") return ThreatSeverity::Maj;
    if (tok == "sev") return ThreatSeverity::Sev;
    return std::nullopt;
}

std::optional<Asil> asil_from(const std::string& tok) {
    if (tok == "qm") return Asil::QM;
    if (tok == "a") return Asil::A;
    if (tok == "b") return Asil::B;
    if (tok == "c") return Asil::C;
    if (tok == "d") return Asil::D;
    return std::nullopt;
}

std::optional<AssumptionKind> assumption_kind_from(const std::string& tok) {
    if (tok == "are_independent") return AssumptionKind::AreIndependent;
    if (tok == "are_decoupled") return AssumptionKind::AreDecoupled;
    if (tok == "are_verified") return AssumptionKind::AreVerified;
    if (tok == "have_policies") return AssumptionKind::HavePolicies;
    return std::nullopt;
}

namespace {

std::optional<int> positive_int(const std::string& s) {
    if (s.empty() || s[0] == '0') return std::nullopt;
    long v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
        if (v > 1000000) return std::nullopt;
    }
    return static_cast<int>(v);
}

std::optional<int> class_from(const std::string& tok, char prefix, int lo, int hi) {
    if (tok.size() != 2 || tok[0] != prefix) return std::nullopt;
    int v = tok[1] - '0';
    if (v < lo || v > hi) return std::nullopt;
    return v;
}

}  // namespace

std::optional<ToleranceLevel> tolerance_from(const std::string& tok) {
    if (tok == "never") return ToleranceLevel::never();
    auto match = [&](const std::string& pre) -> std::optional<int> {
        const std::string suf = "fail";
        if (tok.size() <= pre.size() + suf.size()) return std::nullopt;
        if (tok.compare(0, pre.size(), pre) != 0) return std::nullopt;
        if (tok.compare(tok.size() - suf.size(), suf.size(), suf) != 0) return std::nullopt;
        return positive_int(tok.substr(pre.size(), tok.size() - pre.size() - suf.size()));
    };
    if (auto x = match("all")) return ToleranceLevel::all(*x);
    if (auto x = match("most")) return ToleranceLevel::most(*x);
    return std::nullopt;
}

std::optional<int> severity_class_from(const std::string& tok) {
    return class_from(tok, 's', 0, 3);
}

std::optional<int> exposure_class_from(const std::string& tok) {
    return class_from(tok, 'e', 1, 4);
}

std::optional<int> controllability_class_from(const std::string& tok) {
    return class_from(tok, 'c', 1, 3);
}

bool is_generated_id(const std::string& id) {
    return id.size() > 2 && id[0] == 'n' && id[1] == 'u' &&
           std::isupper(static_cast<unsigned char>(id[2]));
}

bool is_valid_id(const std::string& id) {
    if (id.empty() || !std::islower(static_cast<unsigned char>(id[0]))) return false;
    for (char c : id)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace copat

#include "copat/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace copat {

namespace {

std::string kind_name(ParseError::Kind k) {
    switch (k) {
        case ParseError::Kind::Syntax: return "SyntaxError";
        case ParseError::Kind::Arity: return "ArityError";
        case ParseError::Kind::Value: return "ValueError";
    }
    return "ParseError";
}

std::string format_error(ParseError::Kind k, int line, int col, const std::string& predicate,
                         const std::string& message) {
    std::ostringstream os;
    os << kind_name(k) << " at " << line << ":" << col;
    if (!predicate.empty()) os << " in '" << predicate << "'";
    os << ": " << message;
    return os.str();
}

}  // namespace

ParseError::ParseError(Kind k, int line_, int col_, std::string predicate_,
                       const std::string& message)
    : std::runtime_error(format_error(k, line_, col_, predicate_, message)),
      kind(k),
      line(line_),
      col(col_),
      predicate(std::move(predicate_)) {}

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1, col = 1;

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '%') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(ParseError::Kind::Syntax, line, col, "", msg);
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    std::string word() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        std::string out;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                out += text[pos];
                advance();
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                out += text[pos];
                advance();
            }
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        return out;
    }

    Term term() {
        if (peek() == '[') {
            advance();
            std::vector<Term> items;
            if (peek() != ']') {
                items.push_back(term());
                while (peek() == ',') {
                    advance();
                    items.push_back(term());
                }
            }
            expect(']');
            return Term::lst(std::move(items));
        }
        return Term::tok(word());
    }
};

struct FactBuilder {
    KnowledgeBase kb;
    std::vector<Diagnostic> warnings;
    int line = 1, col = 1;
    std::string pred;

    [[noreturn]] void arity(const std::string& expected) {
        throw ParseError(ParseError::Kind::Arity, line, col, pred,
                         "expected shape " + pred + expected);
    }
    [[noreturn]] void value(const std::string& msg) {
        throw ParseError(ParseError::Kind::Value, line, col, pred, msg);
    }

    Provenance provenance(const std::vector<Term>& args) const {
        // Generated increments carry `nu`-prefixed identifiers.
        for (const auto& a : args) {
            if (a.is_list) {
                if (provenance(a.list) == Provenance::Generated) return Provenance::Generated;
            } else if (is_generated_id(a.token)) {
                return Provenance::Generated;
            }
        }
        return Provenance::User;
    }

    std::string tok(const Term& t, const std::string& what) {
        if (t.is_list) value(what + " must be a token, not a list");
        if (t.token == "_") value(what + " must not be anonymous");
        return t.token;
    }

    std::string ident(const Term& t, const std::string& what) {
        auto s = tok(t, what);
        if (!is_valid_id(s)) value("'" + s + "' is not a valid " + what + " identifier");
        return s;
    }

    std::vector<Term> list_of(const Term& t, const std::string& what) {
        if (!t.is_list) value(what + " must be a bracketed list");
        return t.list;
    }

    std::vector<std::string> ident_list(const Term& t, const std::string& what) {
        std::vector<std::string> out;
        for (const auto& item : list_of(t, what)) out.push_back(ident(item, what + " entry"));
        return out;
    }

    // Channel slot of a pattern fact: a list, or `_` standing for none.
    std::vector<std::string> channel_slot(const Term& t, const std::string& what) {
        if (!t.is_list && t.token == "_") return {};
        return ident_list(t, what);
    }

    ToleranceLevel tolerance(const Term& t, const std::string& what) {
        auto s = tok(t, what);
        auto lv = tolerance_from(s);
        if (!lv) value("'" + s + "' is not a tolerance level (never/allXfail/mostXfail)");
        return *lv;
    }

    void dispatch(const std::string& predicate, const std::vector<Term>& args) {
        pred = predicate;
        const Provenance prov = provenance(args);

        auto unary_hw = [&](HardwareKind kind) {
            if (args.size() != 1) arity("(id)");
            kb.add(HardwareUnit{ident(args[0], "hardware unit"), kind, prov});
        };

        if (predicate == "cp") {
            if (args.size() != 1) arity("(id)");
            kb.add(Component{ident(args[0], "component"), prov});
        } else if (predicate == "subcp") {
            if (args.size() != 2) arity("(child,parent)");
            kb.add(SubComponent{ident(args[0], "component"), ident(args[1], "component"), prov});
        } else if (predicate == "ch") {
            if (args.size() != 3) arity("(id,source,sink)");
            kb.add(Channel{ident(args[0], "channel"), ident(args[1], "component"),
                           ident(args[2], "component"), prov});
        } else if (predicate == "if") {
            if (args.size() != 2) arity("(id,[channels])");
            kb.add(InformationFlow{ident(args[0], "flow"), ident_list(args[1], "channel list"),
                                   prov});
        } else if (predicate == "ecu") {
            unary_hw(HardwareKind::Ecu);
        } else if (predicate == "can") {
            unary_hw(HardwareKind::Can);
        } else if (predicate == "interface") {
            unary_hw(HardwareKind::Interface);
        } else if (predicate == "wireless") {
            unary_hw(HardwareKind::Wireless);
        } else if (predicate == "switch") {
            unary_hw(HardwareKind::Switch);
        } else if (predicate == "actuator") {
            unary_hw(HardwareKind::Actuator);
        } else if (predicate == "dep") {
            if (args.size() != 2) arity("(element,host)");
            kb.add(Deployment{ident(args[0], "element"), ident(args[1], "hardware unit"), prov});
        } else if (predicate == "public") {
            if (args.size() != 1) arity("(hardware)");
            kb.add(PublicMark{ident(args[0], "hardware unit"), prov});
        } else if (predicate == "hz") {
            if (args.size() != 2) arity("(id,[system,severity,exposure,controllability])");
            auto attrs = list_of(args[1], "hazard attributes");
            if (attrs.size() != 4) arity("(id,[system,severity,exposure,controllability])");
            auto sev = severity_class_from(tok(attrs[1], "severity class"));
            auto exp = exposure_class_from(tok(attrs[2], "exposure class"));
            auto ctl = controllability_class_from(tok(attrs[3], "controllability class"));
            if (!sev) value("severity class must be s0..s3");
            if (!exp) value("exposure class must be e1..e4");
            if (!ctl) value("controllability class must be c1..c3");
            kb.add(Hazard{ident(args[0], "hazard"), ident(attrs[0], "system"), *sev, *exp, *ctl,
                          prov});
        } else if (predicate == "asil") {
            if (args.size() != 2) arity("(hazard,level)");
            auto lv = asil_from(tok(args[1], "asil level"));
            if (!lv) value("asil level must be one of qm,a,b,c,d");
            kb.add(AsilOverride{ident(args[0], "hazard"), *lv, prov});
        } else if (predicate == "ft") {
            if (args.size() != 2) arity("(id,[locus])");
            auto locus = list_of(args[1], "fault locus");
            if (locus.size() != 1) arity("(id,[locus])");
            kb.add(Fault{ident(args[0], "fault"), ident(locus[0], "element"), prov});
        } else if (predicate == "fl") {
            if (args.size() != 2) arity("(id,[type])");
            auto types = list_of(args[1], "failure type");
            if (types.size() != 1) arity("(id,[type])");
            auto ty = failure_type_from(tok(types[0], "failure type"));
            if (!ty) value("failure type must be err or loss");
            kb.add(Failure{ident(args[0], "failure"), *ty, prov});
        } else if (predicate == "ft2fl") {
            if (args.size() != 2) arity("(fault,failure)");
            kb.add(FaultTrigger{ident(args[0], "fault"), ident(args[1], "failure"), prov});
        } else if (predicate == "mcs") {
            if (args.size() != 2) arity("(id,[failures])");
            kb.add(MinimalCutSet{ident(args[0], "cut set"), ident_list(args[1], "failure list"),
                                 prov});
        } else if (predicate == "lmcs2hz") {
            if (args.size() != 2) arity("([cutsets],hazard)");
            kb.add(McsToHazard{ident_list(args[0], "cut set list"), ident(args[1], "hazard"),
                               prov});
        } else if (predicate == "sg") {
            if (args.size() != 2) arity("(id,[hazard,failOp,failSilent,failSafe])");
            auto attrs = list_of(args[1], "goal attributes");
            if (attrs.size() != 4) arity("(id,[hazard,failOp,failSilent,failSafe])");
            kb.add(SafetyGoal{ident(args[0], "safety goal"), ident(attrs[0], "hazard"),
                              tolerance(attrs[1], "fail operational"),
                              tolerance(attrs[2], "fail silent"),
                              tolerance(attrs[3], "fail safe"), prov});
        } else if (predicate == "pThreat") {
            if (args.size() != 2) arity("(id,[target,hardware,type,severity])");
            kb.add(threat_attrs(ident(args[0], "potential threat"), std::nullopt, args[1], prov));
        } else if (predicate == "threat") {
            if (args.size() != 2) arity("([id,[path]],attrs)");
            auto head = list_of(args[0], "threat head");
            if (head.size() != 2) arity("([id,[path]],attrs)");
            AttackPath path{ident_list(head[1], "attack path")};
            if (path.hops.empty()) value("attack path must be non-empty");
            kb.add(threat_attrs(ident(head[0], "threat"), path, args[1], prov));
        } else if (predicate == "safetyPattern" || predicate == "securityPattern") {
            const bool safety = predicate == "safetyPattern";
            if (args.size() != 2) arity("(id,[name,[components],[in],[internal],[out]])");
            auto body = list_of(args[1], "pattern body");
            // The security form may omit the internal channel slot.
            if (body.size() != 5 && !(body.size() == 4 && !safety))
                arity("(id,[name,[components],[in],[internal],[out]])");
            PatternInstance inst;
            inst.id = ident(args[0], "pattern instance");
            inst.name = ident(body[0], "pattern name");
            inst.kind = safety ? PatternKind::Safety : PatternKind::Security;
            inst.components = ident_list(body[1], "component list");
            inst.input_ch = channel_slot(body[2], "input channels");
            if (body.size() == 5) {
                inst.internal_ch = channel_slot(body[3], "internal channels");
                inst.output_ch = channel_slot(body[4], "output channels");
            } else {
                inst.output_ch = channel_slot(body[3], "output channels");
            }
            inst.prov = prov;
            kb.add(std::move(inst));
        } else if (predicate == "safetyIntent") {
            if (args.size() != 2) arity("(name,[[types],asil,failOp,failSilent,failSafe])");
            auto body = list_of(args[1], "intent body");
            if (body.size() != 5) arity("(name,[[types],asil,failOp,failSilent,failSafe])");
            SafetyIntentFact f;
            f.pattern = ident(args[0], "pattern name");
            for (const auto& t : list_of(body[0], "failure types")) {
                auto ty = failure_type_from(tok(t, "failure type"));
                if (!ty) value("failure type must be err or loss");
                f.intent.fail_types.insert(*ty);
            }
            if (f.intent.fail_types.empty()) value("intent must cover at least one failure type");
            auto lv = asil_from(tok(body[1], "asil level"));
            if (!lv) value("asil level must be one of qm,a,b,c,d");
            f.intent.attrs.asil = *lv;
            f.intent.attrs.fail_op = tolerance(body[2], "fail operational");
            f.intent.attrs.fail_silent = tolerance(body[3], "fail silent");
            f.intent.attrs.fail_safe = tolerance(body[4], "fail safe");
            f.prov = prov;
            kb.add(std::move(f));
        } else if (predicate == "securityIntent") {
            if (args.size() != 2) arity("(name,[[types]])");
            auto body = list_of(args[1], "intent body");
            if (body.size() != 1) arity("(name,[[types]])");
            SecurityIntentFact f;
            f.pattern = ident(args[0], "pattern name");
            for (const auto& t : list_of(body[0], "threat types")) {
                auto ty = threat_type_from(tok(t, "threat type"));
                if (!ty) value("threat type must be con, int or ava");
                f.threat_types.insert(*ty);
            }
            if (f.threat_types.empty()) value("intent must cover at least one threat type");
            f.prov = prov;
            kb.add(std::move(f));
        } else if (predicate == "assumption") {
            if (args.size() != 3) arity("(pattern,kind,[subjects])");
            auto kind = assumption_kind_from(tok(args[1], "assumption kind"));
            if (!kind) value("unknown assumption kind");
            kb.add(Assumption{ident(args[0], "pattern name"), *kind,
                              ident_list(args[2], "subject list"), prov});
        } else if (predicate == "exploreSafPat") {
            if (args.size() != 1) arity("(name)");
            kb.add(ExploreMark{ident(args[0], "pattern name"), PatternKind::Safety, prov});
        } else if (predicate == "exploreSecPat") {
            if (args.size() != 1) arity("(name)");
            kb.add(ExploreMark{ident(args[0], "pattern name"), PatternKind::Security, prov});
        } else {
            warnings.push_back({DiagSeverity::Warning, "unknown-predicate",
                                "unknown predicate '" + predicate +
                                    "' kept as extension fact (line " + std::to_string(line) +
                                    ")"});
            kb.add(ExtensionFact{predicate, args, prov});
        }
    }

    ThreatRecord threat_attrs(std::string id, std::optional<AttackPath> path, const Term& t,
                              Provenance prov) {
        auto attrs = list_of(t, "threat attributes");
        if (attrs.size() != 4) arity("(id,[target,hardware,type,severity])");
        auto ty = threat_type_from(tok(attrs[2], "threat type"));
        if (!ty) value("threat type must be con, int or ava");
        auto sev = threat_severity_from(tok(attrs[3], "threat severity"));
        if (!sev) value("threat severity must be neg, mod, maj or sev");
        ThreatRecord rec;
        rec.id = std::move(id);
        rec.target = ident(attrs[0], "target");
        rec.target_hw = ident(attrs[1], "hardware unit");
        rec.type = *ty;
        rec.severity = *sev;
        rec.path = std::move(path);
        rec.prov = prov;
        return rec;
    }
};

}  // namespace

ParseResult parse_facts(const std::string& text) {
    Lexer lex{text};
    FactBuilder builder;
    while (!lex.eof()) {
        builder.line = lex.line;
        builder.col = lex.col;
        std::string predicate = lex.word();
        if (predicate.empty() || std::isdigit(static_cast<unsigned char>(predicate[0])))
            lex.fail("fact must start with a predicate name");
        lex.expect('(');
        std::vector<Term> args;
        if (lex.peek() != ')') {
            args.push_back(lex.term());
            while (lex.peek() == ',') {
                lex.advance();
                args.push_back(lex.term());
            }
        }
        lex.expect(')');
        lex.expect('.');
        builder.dispatch(predicate, args);
    }
    return {std::move(builder.kb), std::move(builder.warnings)};
}

namespace {

std::string render_term(const Term& t) {
    if (!t.is_list) return t.token;
    std::string out = "[";
    for (size_t i = 0; i < t.list.size(); ++i) {
        if (i) out += ",";
        out += render_term(t.list[i]);
    }
    return out + "]";
}

std::string bracket(const std::vector<std::string>& items) {
    std::string out = "[";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out + "]";
}

}  // namespace

std::string render_facts(const KnowledgeBase& kb) {
    // One vector of lines per predicate keeps the output grouped and sorted.
    std::vector<std::pair<int, std::string>> lines;
    auto emit = [&](int order, std::string text) { lines.emplace_back(order, std::move(text)); };

    for (const auto& f : kb.components) emit(0, "cp(" + f.id + ").");
    for (const auto& f : kb.subcomponents) emit(1, "subcp(" + f.child + "," + f.parent + ").");
    for (const auto& f : kb.channels)
        emit(2, "ch(" + f.id + "," + f.source + "," + f.sink + ").");
    for (const auto& f : kb.flows) emit(3, "if(" + f.id + "," + bracket(f.channels) + ").");
    for (const auto& f : kb.hardware) emit(4, to_token(f.kind) + "(" + f.id + ").");
    for (const auto& f : kb.deployments) emit(5, "dep(" + f.element + "," + f.host + ").");
    for (const auto& f : kb.publics) emit(6, "public(" + f.hw + ").");
    for (const auto& f : kb.hazards)
        emit(7, "hz(" + f.id + ",[" + f.system + ",s" + std::to_string(f.severity) + ",e" +
                    std::to_string(f.exposure) + ",c" + std::to_string(f.controllability) +
                    "]).");
    for (const auto& f : kb.asil_overrides)
        emit(8, "asil(" + f.hazard + "," + to_token(f.level) + ").");
    for (const auto& f : kb.faults) emit(9, "ft(" + f.id + ",[" + f.locus + "]).");
    for (const auto& f : kb.failures)
        emit(10, "fl(" + f.id + ",[" + to_token(f.type) + "]).");
    for (const auto& f : kb.triggers) emit(11, "ft2fl(" + f.fault + "," + f.failure + ").");
    for (const auto& f : kb.cut_sets) emit(12, "mcs(" + f.id + "," + bracket(f.failures) + ").");
    for (const auto& f : kb.mcs_links)
        emit(13, "lmcs2hz(" + bracket(f.mcs_list) + "," + f.hazard + ").");
    for (const auto& f : kb.goals)
        emit(14, "sg(" + f.id + ",[" + f.hazard + "," + to_token(f.fail_op) + "," +
                     to_token(f.fail_silent) + "," + to_token(f.fail_safe) + "]).");
    for (const auto& f : kb.threats) {
        std::string attrs = "[" + f.target + "," + f.target_hw + "," + to_token(f.type) + "," +
                            to_token(f.severity) + "]";
        if (f.path)
            emit(16, "threat([" + f.id + "," + bracket(f.path->hops) + "]," + attrs + ").");
        else
            emit(15, "pThreat(" + f.id + "," + attrs + ").");
    }
    for (const auto& f : kb.instances) {
        std::string head =
            f.kind == PatternKind::Safety ? "safetyPattern(" : "securityPattern(";
        emit(17, head + f.id + ",[" + f.name + "," + bracket(f.components) + "," +
                     bracket(f.input_ch) + "," + bracket(f.internal_ch) + "," +
                     bracket(f.output_ch) + "]).");
    }
    for (const auto& f : kb.safety_intents) {
        std::vector<std::string> types;
        for (auto t : f.intent.fail_types) types.push_back(to_token(t));
        emit(18, "safetyIntent(" + f.pattern + ",[" + bracket(types) + "," +
                     to_token(f.intent.attrs.asil) + "," + to_token(f.intent.attrs.fail_op) +
                     "," + to_token(f.intent.attrs.fail_silent) + "," +
                     to_token(f.intent.attrs.fail_safe) + "]).");
    }
    for (const auto& f : kb.security_intents) {
        std::vector<std::string> types;
        for (auto t : f.threat_types) types.push_back(to_token(t));
        emit(19, "securityIntent(" + f.pattern + ",[" + bracket(types) + "]).");
    }
    for (const auto& f : kb.assumptions)
        emit(20, "assumption(" + f.pattern + "," + to_token(f.kind) + "," +
                     bracket(f.subjects) + ").");
    for (const auto& f : kb.explores)
        emit(21, (f.kind == PatternKind::Safety ? "exploreSafPat(" : "exploreSecPat(") +
                     f.pattern + ").");
    for (const auto& f : kb.extensions) {
        std::string args;
        for (size_t i = 0; i < f.args.size(); ++i) {
            if (i) args += ",";
            args += render_term(f.args[i]);
        }
        emit(22, f.predicate + "(" + args + ").");
    }

    std::sort(lines.begin(), lines.end());
    std::string out;
    for (auto& [_, text] : lines) {
        out += text;
        out += "\n";
    }
    return out;
}

bool same_facts(const KnowledgeBase& a, const KnowledgeBase& b) {
    return render_facts(a) == render_facts(b);
}

}  // namespace copat

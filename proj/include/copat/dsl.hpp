#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "copat/kb.hpp"

namespace copat {

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, Arity, Value };

    ParseError(Kind k, int line, int col, std::string predicate, const std::string& message);

    Kind kind;
    int line, col;
    std::string predicate;  // empty for plain syntax errors
};

struct ParseResult {
    KnowledgeBase kb;
    std::vector<Diagnostic> warnings;  // e.g. unknown predicates kept as extensions
};

// Parse the textual fact format: `pred(term,...).` per fact, `%` comments,
// terms are tokens, integers or bracketed lists. Recognized predicates map
// into the typed stores; unknown ones are preserved as extension facts with a
// warning. Throws ParseError on malformed input.
ParseResult parse_facts(const std::string& text);

// One fact per line, `.`-terminated, deterministic order (predicate, then id).
// parse_facts(render_facts(kb)) reproduces the same fact set.
std::string render_facts(const KnowledgeBase& kb);

// Fact-set equality via canonical rendering.
bool same_facts(const KnowledgeBase& a, const KnowledgeBase& b);

}  // namespace copat

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "copat/kb.hpp"

namespace copat {

// Which components write to / read from which communication media, derived
// from channels and their deployments.
struct BusIo {
    std::set<std::pair<std::string, std::string>> writes;  // (component, bus)
    std::set<std::pair<std::string, std::string>> reads;   // (component, bus)
};

BusIo derive_bus_io(const KnowledgeBase& kb);

// Subject (component or channel) reachable on `host` via `path`; path starts
// at the host and ends at a public entry point, alternating node-like and
// bus-like hops without repetition.
struct ReachFact {
    std::string subject;
    std::string host;
    std::vector<std::string> path;

    friend bool operator==(const ReachFact&, const ReachFact&) = default;
    friend auto operator<=>(const ReachFact&, const ReachFact&) = default;
};

// Least fixpoint of the intruder model: components on public units are
// reachable; a reached writer exposes its bus and every channel on it; a
// reached bus exposes every reader's host. All distinct simple paths are kept.
std::set<ReachFact> compute_reachable(const KnowledgeBase& kb);

// True when some path reaches the given hardware unit.
bool host_reachable(const std::set<ReachFact>& reach, const std::string& hw);

// All distinct paths reaching (subject, host), sorted.
std::vector<std::vector<std::string>> paths_to(const std::set<ReachFact>& reach,
                                               const std::string& subject,
                                               const std::string& host);

// All distinct paths whose head is the given host, sorted.
std::vector<std::vector<std::string>> paths_to_host(const std::set<ReachFact>& reach,
                                                    const std::string& host);

}  // namespace copat

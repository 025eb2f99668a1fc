#include "copat/reach.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace copat {

BusIo derive_bus_io(const KnowledgeBase& kb) {
    BusIo io;
    for (const auto& ch : kb.channels) {
        auto host = kb.host_of(ch.id);
        if (!host || !kb.is_bus(*host)) continue;
        io.writes.emplace(ch.source, *host);
        io.reads.emplace(ch.sink, *host);
    }
    return io;
}

std::set<ReachFact> compute_reachable(const KnowledgeBase& kb) {
    const BusIo io = derive_bus_io(kb);

    std::map<std::string, std::vector<std::string>> components_on;  // host -> components
    for (const auto& d : kb.deployments)
        if (kb.component(d.element)) components_on[d.host].push_back(d.element);

    std::map<std::string, std::vector<std::string>> channels_on;  // bus -> channels
    for (const auto& d : kb.deployments)
        if (kb.channel(d.element) && kb.is_bus(d.host)) channels_on[d.host].push_back(d.element);

    std::map<std::string, std::vector<std::string>> writes_of;  // component -> buses
    for (const auto& [cp, bus] : io.writes) writes_of[cp].push_back(bus);

    std::map<std::string, std::vector<std::pair<std::string, std::string>>>
        readers_of;  // bus -> (component, host)
    for (const auto& [cp, bus] : io.reads)
        if (auto host = kb.host_of(cp)) readers_of[bus].emplace_back(cp, *host);

    std::set<ReachFact> facts;
    std::deque<ReachFact> work;
    auto derive = [&](ReachFact f) {
        if (facts.insert(f).second) work.push_back(std::move(f));
    };

    // Base case: components deployed on public units.
    for (const auto& p : kb.publics)
        for (const auto& cp : components_on[p.hw]) derive({cp, p.hw, {p.hw}});

    auto on_path = [](const std::vector<std::string>& path, const std::string& hw) {
        return std::find(path.begin(), path.end(), hw) != path.end();
    };

    while (!work.empty()) {
        const ReachFact f = work.front();
        work.pop_front();
        if (kb.component(f.subject)) {
            // Reached writer exposes its buses and every channel on them.
            for (const auto& bus : writes_of[f.subject]) {
                if (on_path(f.path, bus)) continue;
                std::vector<std::string> path{bus};
                path.insert(path.end(), f.path.begin(), f.path.end());
                for (const auto& ch : channels_on[bus]) derive({ch, bus, path});
            }
        } else {
            // Reached bus exposes every reader and its host.
            for (const auto& [cp, host] : readers_of[f.host]) {
                if (on_path(f.path, host)) continue;
                std::vector<std::string> path{host};
                path.insert(path.end(), f.path.begin(), f.path.end());
                derive({cp, host, path});
            }
        }
    }
    return facts;
}

bool host_reachable(const std::set<ReachFact>& reach, const std::string& hw) {
    return std::any_of(reach.begin(), reach.end(),
                       [&](const ReachFact& f) { return f.host == hw; });
}

std::vector<std::vector<std::string>> paths_to(const std::set<ReachFact>& reach,
                                               const std::string& subject,
                                               const std::string& host) {
    std::set<std::vector<std::string>> paths;
    for (const auto& f : reach)
        if (f.subject == subject && f.host == host) paths.insert(f.path);
    return {paths.begin(), paths.end()};
}

std::vector<std::vector<std::string>> paths_to_host(const std::set<ReachFact>& reach,
                                                    const std::string& host) {
    std::set<std::vector<std::string>> paths;
    for (const auto& f : reach)
        if (f.host == host) paths.insert(f.path);
    return {paths.begin(), paths.end()};
}

}  // namespace copat

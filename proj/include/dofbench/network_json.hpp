#pragma once

#include "dofbench/network.hpp"

#include "json.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace dofbench {

/// {K, T, connectivity, entries: [{rx, tx, diag: ["p/q", ...]}]}
inline nlohmann::json channel_to_json(const ChannelRealization& channel) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [link, diag] : channel.diagonals()) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : diag) values.push_back(to_string(v));
    entries.push_back({{"rx", link.rx}, {"tx", link.tx}, {"diag", values}});
  }
  return {{"K", channel.topology().users()},
          {"T", channel.extension()},
          {"connectivity", std::string(to_string(channel.topology().connectivity()))},
          {"entries", entries}};
}

/// Reads a channel document. The cluster map is not part of the format and
/// is supplied by the caller.
inline ChannelRealization channel_from_json(const nlohmann::json& doc, int cluster_size = 2) {
  try {
    const int users = doc.at("K").get<int>();
    const int extension = doc.at("T").get<int>();
    auto topology = build_topology(users, parse_connectivity(doc.at("connectivity").get<std::string>()), cluster_size);
    std::map<Link, ChannelRealization::Diagonal> diagonals;
    for (const auto& entry : doc.at("entries")) {
      const Link link{entry.at("rx").get<int>(), entry.at("tx").get<int>()};
      ChannelRealization::Diagonal diag;
      for (const auto& v : entry.at("diag")) diag.push_back(parse_rational(v.get<std::string>()));
      if (!diagonals.emplace(link, std::move(diag)).second)
        throw std::invalid_argument("duplicate channel entry rx=" + std::to_string(link.rx) +
                                    " tx=" + std::to_string(link.tx));
    }
    return ChannelRealization(std::move(topology), extension, std::move(diagonals));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed channel document: ") + e.what());
  }
}

}  // namespace dofbench

#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cursed/game.hpp"

namespace cursed {

// Coarsest valid partition of the non-terminal (type profile, history)
// nodes, one per conjectured-about player j. Cells always contain every type
// profile, so they are stored as sets of same-stage public histories.
struct Partition {
  std::vector<std::vector<int>> cell_of;                   // [j][node], -1 at terminals
  std::vector<std::vector<std::vector<NodeId>>> cells;     // [j][cell]
  bool phc = false;
  bool forced_phc = false;
  std::string provenance;

  const std::vector<NodeId>& cell(int player, NodeId h) const { return cells[player][cell_of[player][h]]; }
};

// Starts from grouping same-stage histories whose A_j label sets coincide and
// splits any group whose members differ in j's own earlier information
// (parent cell) or j's own previous action. Histories where j had a single
// action do not distinguish by that action.
template <class S>
Partition coarsest_valid_partition(const Game<S>& game, bool force_phc = false) {
  Partition out;
  int n = game.num_players();
  out.cell_of.assign(n, std::vector<int>(game.num_nodes(), -1));
  out.cells.resize(n);
  out.forced_phc = force_phc;
  out.provenance = force_phc ? "public histories" : "label sets refined by perfect recall";
  for (int j = 0; j < n; ++j) {
    for (int t = 0; t < game.horizon(); ++t) {
      std::map<std::tuple<int, int, int>, int> index;
      for (NodeId h : game.nodes_at_stage(t)) {
        int cell = -1;
        if (!force_phc) {
          int parent_cell = -1, own = -1;
          if (h != Game<S>::root()) {
            NodeId parent = game.node(h).parent;
            parent_cell = out.cell_of[j][parent];
            if (game.num_actions(j, parent) > 1) own = game.incoming_action(h, j);
          }
          auto key = std::make_tuple(game.label_set_id(j, h), parent_cell, own);
          auto it = index.find(key);
          if (it != index.end()) cell = it->second;
          else index.emplace(key, static_cast<int>(out.cells[j].size()));
        }
        if (cell < 0) {
          cell = static_cast<int>(out.cells[j].size());
          out.cells[j].emplace_back();
        }
        out.cells[j][cell].push_back(h);
        out.cell_of[j][h] = cell;
      }
    }
  }
  out.phc = true;
  for (const auto& per_player : out.cells) {
    for (const auto& c : per_player) out.phc = out.phc && c.size() == 1;
  }
  return out;
}

inline bool check_phc(const Partition& partition) {
  for (const auto& per_player : partition.cells) {
    for (const auto& c : per_player) {
      if (c.size() != 1) return false;
    }
  }
  return true;
}

}  // namespace cursed

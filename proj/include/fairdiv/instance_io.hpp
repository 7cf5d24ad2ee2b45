// Copyright 2026 The fairdiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRDIV_INSTANCE_IO_HPP_
#define FAIRDIV_INSTANCE_IO_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fairdiv/grid.hpp"
#include "fairdiv/prng.hpp"

namespace fairdiv {

// Instances carry human-readable player names in documents; PlayerId p maps
// to players[p] everywhere.
struct NamedNecklace {
  std::vector<std::string> players;
  Necklace necklace;

  bool operator==(const NamedNecklace& other) const {
    return players == other.players && necklace == other.necklace;
  }
};

struct NamedGrid {
  std::vector<std::string> players;
  GridSpec grid;

  bool operator==(const NamedGrid& other) const {
    return players == other.players && grid == other.grid;
  }
};

using Instance = std::variant<NamedNecklace, NamedGrid>;

inline const std::vector<std::string>& instancePlayers(const Instance& instance) {
  return std::visit([](const auto& inst) -> const std::vector<std::string>& {
    return inst.players;
  }, instance);
}

inline int playerIndex(const std::vector<std::string>& players, const std::string& name) {
  for (size_t i = 0; i < players.size(); ++i)
    if (players[i] == name) return static_cast<int>(i);
  return -1;
}

// A..Z, then P27, P28, ... for generated instances.
inline std::string defaultPlayerName(int i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "P" + std::to_string(i + 1);
}

namespace detail {

inline std::string docPath(const std::string& base, const std::string& leaf) {
  return base.empty() ? leaf : base + "/" + leaf;
}

inline const nlohmann::json& requireField(const nlohmann::json& doc, const char* name,
                                          const std::string& where) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(docPath(where, name), "missing required field");
  return *it;
}

// Exact value ingestion: rational strings ("0.1", "7/2") or JSON integers.
// JSON floats are rejected because they have already been through a double.
inline Rational parseValueNode(const nlohmann::json& node, const std::string& where) {
  Rational value;
  if (node.is_string()) {
    try {
      value = parseRational(node.get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw ParseError(where, err.what());
    }
  } else if (node.is_number_integer() && !node.is_number_unsigned()) {
    value = Rational(node.get<std::int64_t>());
  } else if (node.is_number_unsigned()) {
    value = Rational(BigInt(node.get<std::uint64_t>()));
  } else {
    throw ParseError(where, "value must be a rational string or integer; "
                            "floats lose exactness");
  }
  if (value < 0) throw ParseError(where, "value must be nonnegative");
  return value;
}

inline int parseSizeField(const nlohmann::json& doc, const char* name,
                          const std::string& where) {
  const nlohmann::json& node = requireField(doc, name, where);
  if (!node.is_number_integer() || node.is_number_float())
    throw ParseError(docPath(where, name), "must be a positive integer");
  std::int64_t value = node.get<std::int64_t>();
  if (value < 1 || value > 1000000)
    throw ParseError(docPath(where, name), "must be a positive integer");
  return static_cast<int>(value);
}

inline std::vector<std::string> parsePlayers(const nlohmann::json& doc,
                                             const std::string& where) {
  const nlohmann::json& node = requireField(doc, "players", where);
  std::string path = docPath(where, "players");
  if (!node.is_array() || node.empty())
    throw ParseError(path, "must be a non-empty array of names");
  std::vector<std::string> players;
  for (size_t i = 0; i < node.size(); ++i) {
    const nlohmann::json& name = node[i];
    std::string entry = path + "/" + std::to_string(i);
    if (!name.is_string() || name.get<std::string>().empty())
      throw ParseError(entry, "player name must be a non-empty string");
    if (playerIndex(players, name.get<std::string>()) >= 0)
      throw ParseError(entry, "duplicate player name '" + name.get<std::string>() + "'");
    players.push_back(name.get<std::string>());
  }
  return players;
}

}  // namespace detail

// Parses an instance document that may sit inside a larger document; `where`
// prefixes error locations ("" for a root-level instance).
inline Instance parseInstanceJson(const nlohmann::json& doc, const std::string& where = "") {
  using detail::docPath;
  if (!doc.is_object())
    throw ParseError(where.empty() ? "document" : where, "expected a JSON object");

  const nlohmann::json& kindNode = detail::requireField(doc, "kind", where);
  if (!kindNode.is_string())
    throw ParseError(docPath(where, "kind"), "must be \"necklace\" or \"grid\"");
  std::string kind = kindNode.get<std::string>();

  std::vector<std::string> players = detail::parsePlayers(doc, where);
  const int n = static_cast<int>(players.size());

  if (kind == "necklace") {
    const nlohmann::json& beadsNode = detail::requireField(doc, "beads", where);
    std::string beadsPath = docPath(where, "beads");
    if (!beadsNode.is_array()) throw ParseError(beadsPath, "must be an array of beads");
    std::vector<std::vector<Rational>> beads;
    beads.reserve(beadsNode.size());
    for (size_t b = 0; b < beadsNode.size(); ++b) {
      std::string beadPath = beadsPath + "/" + std::to_string(b);
      const nlohmann::json& bead = beadsNode[b];
      if (!bead.is_object())
        throw ParseError(beadPath, "each bead must map player names to values");
      std::vector<Rational> row(n, Rational(0));
      for (auto it = bead.begin(); it != bead.end(); ++it) {
        int p = playerIndex(players, it.key());
        if (p < 0) throw ParseError(beadPath + "/" + it.key(), "unknown player");
        row[p] = detail::parseValueNode(it.value(), beadPath + "/" + it.key());
      }
      beads.push_back(std::move(row));
    }
    return NamedNecklace{std::move(players), Necklace(n, std::move(beads))};
  }

  if (kind == "grid") {
    int rows = detail::parseSizeField(doc, "rows", where);
    int cols = detail::parseSizeField(doc, "cols", where);
    if (static_cast<std::int64_t>(rows) * cols * n > (1 << 22))
      throw ParseError(docPath(where, "rows"), "grid too large");
    GridSpec grid(n, rows, cols);

    const nlohmann::json& squaresNode = detail::requireField(doc, "squares", where);
    std::string squaresPath = docPath(where, "squares");
    if (!squaresNode.is_array()) throw ParseError(squaresPath, "must be an array of squares");
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < squaresNode.size(); ++i) {
      std::string squarePath = squaresPath + "/" + std::to_string(i);
      const nlohmann::json& square = squaresNode[i];
      if (!square.is_object()) throw ParseError(squarePath, "each square must be an object");

      auto coord = [&](const char* name, int limit) {
        const nlohmann::json& node = detail::requireField(square, name, squarePath);
        if (!node.is_number_integer()) throw ParseError(squarePath + "/" + name,
                                                        "must be an integer");
        std::int64_t v = node.get<std::int64_t>();
        if (v < 0 || v >= limit) throw ParseError(squarePath + "/" + name,
                                                  "outside the grid");
        return static_cast<int>(v);
      };
      int r = coord("row", rows);
      int c = coord("col", cols);
      if (!seen.insert({r, c}).second)
        throw ParseError(squarePath, "duplicate square (" + std::to_string(r) + ", " +
                                         std::to_string(c) + ")");

      bool hasOwner = square.contains("owner");
      bool hasValues = square.contains("values");
      if (hasOwner == hasValues)
        throw ParseError(squarePath, "square needs either owner and value, or values");
      if (hasOwner) {
        const nlohmann::json& ownerNode = square["owner"];
        if (!ownerNode.is_string())
          throw ParseError(squarePath + "/owner", "must be a player name");
        int p = playerIndex(players, ownerNode.get<std::string>());
        if (p < 0) throw ParseError(squarePath + "/owner", "unknown player");
        const nlohmann::json& valueNode = detail::requireField(square, "value", squarePath);
        grid.setValue(r, c, p, detail::parseValueNode(valueNode, squarePath + "/value"));
      } else {
        const nlohmann::json& valuesNode = square["values"];
        if (!valuesNode.is_object())
          throw ParseError(squarePath + "/values", "must map player names to values");
        for (auto it = valuesNode.begin(); it != valuesNode.end(); ++it) {
          int p = playerIndex(players, it.key());
          if (p < 0) throw ParseError(squarePath + "/values/" + it.key(), "unknown player");
          grid.setValue(r, c, p,
                        detail::parseValueNode(it.value(), squarePath + "/values/" + it.key()));
        }
      }
    }
    return NamedGrid{std::move(players), std::move(grid)};
  }

  throw ParseError(docPath(where, "kind"), "must be \"necklace\" or \"grid\"");
}

inline Instance parseInstance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("document", err.what());
  }
  return parseInstanceJson(doc);
}

inline nlohmann::json instanceJson(const Instance& instance) {
  nlohmann::json doc;
  const std::vector<std::string>& players = instancePlayers(instance);
  doc["players"] = players;

  if (const NamedNecklace* named = std::get_if<NamedNecklace>(&instance)) {
    doc["kind"] = "necklace";
    nlohmann::json beads = nlohmann::json::array();
    for (int b = 0; b < named->necklace.length(); ++b) {
      nlohmann::json bead = nlohmann::json::object();
      for (PlayerId p = 0; p < named->necklace.playerCount(); ++p) {
        const Rational& v = named->necklace.value(b, p);
        if (v != 0) bead[players[p]] = toString(v);
      }
      beads.push_back(std::move(bead));
    }
    doc["beads"] = std::move(beads);
    return doc;
  }

  const NamedGrid& named = std::get<NamedGrid>(instance);
  doc["kind"] = "grid";
  doc["rows"] = named.grid.rows();
  doc["cols"] = named.grid.cols();
  nlohmann::json squares = nlohmann::json::array();
  for (int r = 0; r < named.grid.rows(); ++r)
    for (int c = 0; c < named.grid.cols(); ++c) {
      std::vector<PlayerId> positive;
      for (PlayerId p = 0; p < named.grid.playerCount(); ++p)
        if (named.grid.value(r, c, p) != 0) positive.push_back(p);
      if (positive.empty()) continue;
      nlohmann::json square;
      square["row"] = r;
      square["col"] = c;
      if (positive.size() == 1) {
        square["owner"] = players[positive.front()];
        square["value"] = toString(named.grid.value(r, c, positive.front()));
      } else {
        nlohmann::json values = nlohmann::json::object();
        for (PlayerId p : positive) values[players[p]] = toString(named.grid.value(r, c, p));
        square["values"] = std::move(values);
      }
      squares.push_back(std::move(square));
    }
  doc["squares"] = std::move(squares);
  return doc;
}

// Canonical document bytes: sorted keys, two-space indent, trailing newline.
inline std::string dumpDocument(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

inline std::string serializeInstance(const Instance& instance) {
  return dumpDocument(instanceJson(instance));
}

// ============================================================
// Generation
// ============================================================

enum class PreferenceClass { Monolithic, Binary, General };
enum class InstanceKind { Necklace, Grid };

// Same config always yields the same instance: draws come from xoshiro256**
// in a fixed order (beads ascending / squares row-major, players ascending
// within a bead or square).
struct GeneratorConfig {
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::Necklace;
  PreferenceClass preferenceClass = PreferenceClass::General;
  int players = 2;
  int length = 5;                   // necklace beads, or grid rows
  int cols = 1;                     // grid columns; unused for necklaces
  Rational maxValue = Rational(1);  // bound s on any single value
};

inline Instance generate(const GeneratorConfig& config) {
  if (config.players < 1) throw std::invalid_argument("player count must be positive");
  if (config.players > 64) throw std::invalid_argument("player count too large");
  bool isGrid = config.kind == InstanceKind::Grid;
  if (config.length < (isGrid ? 1 : 0))
    throw std::invalid_argument("instance length must be positive");
  if (isGrid && config.cols < 1) throw std::invalid_argument("column count must be positive");
  if (config.length > 100000 || (isGrid && config.cols > 100000))
    throw std::invalid_argument("instance size too large");
  if (config.maxValue < 0) throw std::invalid_argument("value bound must be nonnegative");
  if (config.preferenceClass == PreferenceClass::Monolithic && config.maxValue < 1)
    throw std::invalid_argument("monolithic generation needs a value bound of at least 1");
  if (config.maxValue > 1000000) throw std::invalid_argument("value bound too large");

  Xoshiro256StarStar rng(config.seed);
  const int n = config.players;

  // Denominators are kept in 1..4 so generated values stay readable; the
  // numerator range makes the value land in [0, s] (or (0, s] when owned).
  auto drawValue = [&](bool allowZero) {
    std::uint64_t den = rng.uniformInt(1, 4);
    std::uint64_t top =
        static_cast<std::uint64_t>(toInt(ratFloor(config.maxValue * Rational(den))));
    std::uint64_t num = rng.uniformInt(allowZero ? 0 : 1, top);
    return Rational(BigInt(num), BigInt(den));
  };
  auto drawCell = [&](std::vector<Rational>& row) {
    switch (config.preferenceClass) {
      case PreferenceClass::Monolithic: {
        std::uint64_t roll = rng.uniformInt(0, static_cast<std::uint64_t>(n));
        if (roll > 0) row[roll - 1] = drawValue(false);
        break;
      }
      case PreferenceClass::Binary:
        for (PlayerId p = 0; p < n; ++p) row[p] = Rational(rng.uniformInt(0, 1));
        break;
      case PreferenceClass::General:
        for (PlayerId p = 0; p < n; ++p) row[p] = drawValue(true);
        break;
    }
  };

  std::vector<std::string> players;
  for (int i = 0; i < n; ++i) players.push_back(defaultPlayerName(i));

  if (!isGrid) {
    std::vector<std::vector<Rational>> beads(config.length, std::vector<Rational>(n, Rational(0)));
    for (auto& bead : beads) drawCell(bead);
    return NamedNecklace{std::move(players), Necklace(n, std::move(beads))};
  }

  GridSpec grid(n, config.length, config.cols);
  std::vector<Rational> cell(n);
  for (int r = 0; r < config.length; ++r)
    for (int c = 0; c < config.cols; ++c) {
      std::fill(cell.begin(), cell.end(), Rational(0));
      drawCell(cell);
      for (PlayerId p = 0; p < n; ++p)
        if (cell[p] != 0) grid.setValue(r, c, p, cell[p]);
    }
  return NamedGrid{std::move(players), std::move(grid)};
}

// ============================================================
// Result documents
// ============================================================

inline nlohmann::json cutsJson(const DiscreteCutSet& cuts) {
  return nlohmann::json(cuts.cuts);
}

inline nlohmann::json cutsJson(const LatticeCutSet& cuts) {
  return nlohmann::json(cuts.cut);
}

inline nlohmann::json cutsJson(const ContinuousCutSet& cuts) {
  nlohmann::json out = nlohmann::json::array();
  for (const Rational& c : cuts.cuts) out.push_back(toString(c));
  return out;
}

// The shared result core: every solver answer embeds its instance so the
// document re-verifies on its own. Verb-specific fields are added on top.
inline nlohmann::json resultDocument(const Instance& instance, nlohmann::json cuts,
                                     const std::vector<PlayerId>& assignment,
                                     const EnvyReport& report) {
  const std::vector<std::string>& players = instancePlayers(instance);
  internalCheck(assignment.size() == players.size(), "assignment does not cover the players");

  nlohmann::json doc;
  doc["instance"] = instanceJson(instance);
  doc["cuts"] = std::move(cuts);
  nlohmann::json assign = nlohmann::json::object();
  for (size_t piece = 0; piece < assignment.size(); ++piece)
    assign[players[assignment[piece]]] = piece;
  doc["assignment"] = std::move(assign);
  nlohmann::json envy = nlohmann::json::object();
  nlohmann::json matrix = nlohmann::json::object();
  for (size_t p = 0; p < players.size(); ++p) {
    envy[players[p]] = toString(report.envy[p]);
    nlohmann::json row = nlohmann::json::array();
    for (const Rational& v : report.valueMatrix[p]) row.push_back(toString(v));
    matrix[players[p]] = std::move(row);
  }
  doc["envy"] = std::move(envy);
  doc["maxEnvy"] = toString(report.maxEnvy);
  doc["valueMatrix"] = std::move(matrix);
  return doc;
}

// ============================================================
// Verification input
// ============================================================

// A division to re-check: an instance plus cuts and an assignment, the shape
// produced by resultDocument. Cuts are either flat column positions or
// per-row lattice paths; exactly one of the two is present.
struct VerifyInput {
  Instance instance;
  std::optional<DiscreteCutSet> columnCuts;
  std::optional<LatticeCutSet> latticeCuts;
  std::vector<PlayerId> assignment;  // piece -> player
  std::optional<Rational> claimedMaxEnvy;
};

inline VerifyInput parseVerifyInput(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("document", err.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");

  Instance instance = parseInstanceJson(detail::requireField(doc, "instance", ""), "instance");
  const std::vector<std::string>& players = instancePlayers(instance);
  const int n = static_cast<int>(players.size());
  bool isGrid = std::holds_alternative<NamedGrid>(instance);

  const nlohmann::json& cutsNode = detail::requireField(doc, "cuts", "");
  if (!cutsNode.is_array()) throw ParseError("cuts", "must be an array");
  bool lattice = isGrid;
  if (!cutsNode.empty()) {
    if (cutsNode.front().is_array()) {
      if (!isGrid) throw ParseError("cuts", "per-row lattice cuts need a grid instance");
      lattice = true;
    } else {
      lattice = false;
    }
  }
  auto cutValue = [](const nlohmann::json& node, const std::string& where) {
    if (!node.is_number_integer())
      throw ParseError(where, "cut positions must be integers");
    std::int64_t v = node.get<std::int64_t>();
    if (v < -1000000000 || v > 1000000000) throw ParseError(where, "cut position out of range");
    return static_cast<int>(v);
  };

  std::optional<DiscreteCutSet> columnCuts;
  std::optional<LatticeCutSet> latticeCuts;
  if (lattice) {
    LatticeCutSet cuts;
    for (size_t i = 0; i < cutsNode.size(); ++i) {
      std::string cutPath = "cuts/" + std::to_string(i);
      if (!cutsNode[i].is_array())
        throw ParseError(cutPath, "each lattice cut lists one position per row");
      std::vector<int> path;
      for (size_t r = 0; r < cutsNode[i].size(); ++r)
        path.push_back(cutValue(cutsNode[i][r], cutPath + "/" + std::to_string(r)));
      cuts.cut.push_back(std::move(path));
    }
    latticeCuts = std::move(cuts);
  } else {
    DiscreteCutSet cuts;
    for (size_t i = 0; i < cutsNode.size(); ++i)
      cuts.cuts.push_back(cutValue(cutsNode[i], "cuts/" + std::to_string(i)));
    columnCuts = std::move(cuts);
  }

  const nlohmann::json& assignNode = detail::requireField(doc, "assignment", "");
  if (!assignNode.is_object() || static_cast<int>(assignNode.size()) != n)
    throw ParseError("assignment", "must map every player to a piece index");
  std::vector<PlayerId> assignment(n, -1);
  for (auto it = assignNode.begin(); it != assignNode.end(); ++it) {
    std::string path = "assignment/" + it.key();
    int p = playerIndex(players, it.key());
    if (p < 0) throw ParseError(path, "unknown player");
    if (!it.value().is_number_integer()) throw ParseError(path, "piece index must be an integer");
    std::int64_t piece = it.value().get<std::int64_t>();
    if (piece < 0 || piece >= n) throw ParseError(path, "piece index out of range");
    if (assignment[piece] != -1) throw ParseError(path, "two players share piece " +
                                                            std::to_string(piece));
    assignment[piece] = p;
  }

  std::optional<Rational> claimed;
  if (doc.contains("maxEnvy")) claimed = detail::parseValueNode(doc["maxEnvy"], "maxEnvy");

  return VerifyInput{std::move(instance), std::move(columnCuts), std::move(latticeCuts),
                     std::move(assignment), std::move(claimed)};
}

}  // namespace fairdiv

#endif  // FAIRDIV_INSTANCE_IO_HPP_

#pragma once

// JSON schemas for the command-line surface. Simplicial sets carry only
// nondegenerate simplices; face references name a base simplex and a strictly
// decreasing degeneracy word. Parsing validates shapes, the canonical word
// form, and the face identities, naming the offending simplex.

#include "picobar/sset.hpp"

#include "json.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace picobar {

using json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace jsondetail {

inline const json& need(const json& j, const std::string& key,
                        const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline int need_int(const json& j, const std::string& key,
                    const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer())
    throw InputError(where + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace jsondetail

inline TruncatedSimplicialSet parse_simplicial_set(const json& doc) {
  using jsondetail::need;
  using jsondetail::need_int;
  TruncatedSimplicialSet X;
  X.D = need_int(doc, "truncation", "simplicial set");
  if (X.D < 0) throw InputError("simplicial set: negative truncation");
  X.labels.resize(X.D + 1);
  X.faces.resize(X.D + 1);

  const json& simp = need(doc, "simplices", "simplicial set");
  if (!simp.is_object())
    throw InputError("simplicial set: 'simplices' must be an object");
  std::map<std::string, std::pair<int, int>> where;  // id -> (dim, idx)
  for (const auto& [dim_str, ids] : simp.items()) {
    int n;
    try {
      size_t used = 0;
      n = std::stoi(dim_str, &used);
      if (used != dim_str.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("simplices: dimension key '" + dim_str +
                       "' is not an integer");
    }
    if (n < 0 || n > X.D)
      throw InputError("simplices: dimension " + dim_str +
                       " outside the truncation");
    if (!ids.is_array())
      throw InputError("simplices[" + dim_str + "]: expected an array of ids");
    for (const json& id : ids) {
      if (!id.is_string())
        throw InputError("simplices[" + dim_str + "]: ids must be strings");
      std::string s = id.get<std::string>();
      if (where.count(s))
        throw InputError("simplices: duplicate id '" + s + "'");
      where[s] = {n, static_cast<int>(X.labels[n].size())};
      X.labels[n].push_back(s);
    }
  }

  const json& faces = need(doc, "faces", "simplicial set");
  if (!faces.is_object())
    throw InputError("simplicial set: 'faces' must be an object");
  for (int n = 1; n <= X.D; ++n)
    X.faces[n].resize(X.labels[n].size());
  for (const auto& [id, arr] : faces.items()) {
    auto it = where.find(id);
    if (it == where.end())
      throw InputError("faces: unknown simplex id '" + id + "'");
    auto [n, idx] = it->second;
    if (n == 0) throw InputError("faces: vertex '" + id + "' has no faces");
    if (!arr.is_array() || static_cast<int>(arr.size()) != n + 1)
      throw InputError("faces['" + id + "']: expected " + std::to_string(n + 1) +
                       " references");
    for (const json& ref : arr) {
      const json& base = jsondetail::need(ref, "base", "faces['" + id + "']");
      if (!base.is_string())
        throw InputError("faces['" + id + "']: 'base' must be an id string");
      auto bt = where.find(base.get<std::string>());
      if (bt == where.end())
        throw InputError("faces['" + id + "']: unknown base '" +
                         base.get<std::string>() + "'");
      SimplexRef r;
      r.base_dim = bt->second.first;
      r.base_idx = bt->second.second;
      const json& w = jsondetail::need(ref, "s", "faces['" + id + "']");
      if (!w.is_array())
        throw InputError("faces['" + id + "']: 's' must be an array");
      for (const json& j : w) {
        if (!j.is_number_integer())
          throw InputError("faces['" + id + "']: degeneracy indices must be integers");
        r.word.push_back(j.get<int>());
      }
      for (size_t k = 0; k + 1 < r.word.size(); ++k)
        if (r.word[k] <= r.word[k + 1])
          throw InputError("faces['" + id +
                           "']: degeneracy word not strictly decreasing");
      if (r.dim() != n - 1)
        throw InputError("faces['" + id + "']: face dimension mismatch");
      X.faces[n][idx].push_back(r);
    }
  }
  for (int n = 1; n <= X.D; ++n)
    for (size_t i = 0; i < X.labels[n].size(); ++i)
      if (X.faces[n][i].size() != static_cast<size_t>(n + 1))
        throw InputError("faces: simplex '" + X.labels[n][i] +
                         "' has no face data");

  // face identities, named per simplex
  for (int n = 2; n <= X.D; ++n)
    for (int x = 0; x < X.nondeg_count(n); ++x)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          SimplexRef a = X.face(X.face(X.nondeg(n, x), j), i);
          SimplexRef b = X.face(X.face(X.nondeg(n, x), i), j - 1);
          if (!(a == b))
            throw InputError("simplex '" + X.labels[n][x] + "' violates d" +
                             std::to_string(i) + " d" + std::to_string(j) +
                             " = d" + std::to_string(j - 1) + " d" +
                             std::to_string(i));
        }
  X.check();
  return X;
}

inline json serialize_simplicial_set(const TruncatedSimplicialSet& X) {
  json doc;
  doc["truncation"] = X.D;
  json simp = json::object();
  for (int n = 0; n <= X.D; ++n) {
    json ids = json::array();
    for (const std::string& s : X.labels[n]) ids.push_back(s);
    simp[std::to_string(n)] = ids;
  }
  doc["simplices"] = simp;
  json faces = json::object();
  for (int n = 1; n <= X.D; ++n)
    for (int x = 0; x < X.nondeg_count(n); ++x) {
      json arr = json::array();
      for (const SimplexRef& r : X.faces[n][x]) {
        json ref;
        ref["s"] = r.word;
        ref["base"] = X.labels[r.base_dim][r.base_idx];
        arr.push_back(ref);
      }
      faces[X.labels[n][x]] = arr;
    }
  doc["faces"] = faces;
  return doc;
}

inline FiniteGroup parse_group(const json& doc) {
  int order = jsondetail::need_int(doc, "order", "group");
  const json& tab = jsondetail::need(doc, "table", "group");
  if (!tab.is_array() || static_cast<int>(tab.size()) != order)
    throw InputError("group: table must have 'order' rows");
  std::vector<std::vector<int>> t;
  for (const json& row : tab) {
    if (!row.is_array() || static_cast<int>(row.size()) != order)
      throw InputError("group: table rows must have 'order' entries");
    t.push_back(row.get<std::vector<int>>());
  }
  FiniteGroup g;
  try {
    g = FiniteGroup::from_table(t);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  int e = jsondetail::need_int(doc, "identity", "group");
  if (e != g.e) throw InputError("group: declared identity is not the identity");
  return g;
}

inline json serialize_group(const FiniteGroup& g) {
  json doc;
  doc["order"] = g.n;
  doc["table"] = g.table;
  doc["identity"] = g.e;
  return doc;
}

// a module over an algebra, given as one action matrix per basis label
struct ModuleDescription {
  int rank = 0;
  std::map<std::string, std::vector<std::vector<std::string>>> action;
};

inline ModuleDescription parse_module(const json& doc) {
  ModuleDescription m;
  m.rank = jsondetail::need_int(doc, "rank", "module");
  if (m.rank < 0) throw InputError("module: negative rank");
  const json& act = jsondetail::need(doc, "action", "module");
  if (!act.is_object()) throw InputError("module: 'action' must be an object");
  for (const auto& [label, mat] : act.items()) {
    if (!mat.is_array() || static_cast<int>(mat.size()) != m.rank)
      throw InputError("module action '" + label + "': expected " +
                       std::to_string(m.rank) + " rows");
    std::vector<std::vector<std::string>> rows;
    for (const json& row : mat) {
      if (!row.is_array() || static_cast<int>(row.size()) != m.rank)
        throw InputError("module action '" + label + "': ragged matrix");
      std::vector<std::string> r;
      for (const json& v : row) {
        if (v.is_number_integer())
          r.push_back(std::to_string(v.get<long long>()));
        else if (v.is_string())
          r.push_back(v.get<std::string>());
        else
          throw InputError("module action '" + label +
                           "': entries must be integers or integer strings");
      }
      rows.push_back(std::move(r));
    }
    m.action[label] = std::move(rows);
  }
  return m;
}

}  // namespace picobar

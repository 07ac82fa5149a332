#include "dgw/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dgw/catalog.hpp"

namespace dgw {

namespace {

std::string ring_label(const Ring& r) { return r.is_fp() ? "F" + std::to_string(r.characteristic()) : r.name(); }

Ring ring_of(const Json& j) {
  if (!j.contains("ring")) throw InputError("missing field 'ring'");
  return Ring::parse(j.at("ring").get<std::string>());
}

Scalar scalar_of(const Json& v, const Ring& ring) {
  if (v.is_string()) return ring.normalize(scalar_from_string(v.get<std::string>()));
  if (v.is_number_integer()) return ring.normalize(Scalar(v.get<long>()));
  throw InputError("ring elements must be decimal strings");
}

int degree_key(const std::string& s) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InputError("degree key '" + s + "' is not an integer");
  return n;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_string(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const Ring& ring, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw InputError("matrix should have " + std::to_string(rows) + " rows");
  Matrix m(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError("matrix row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, scalar_of(j[r][c], ring));
  }
  return m;
}

Json to_json(const ChainComplex& x) {
  Json j;
  j["ring"] = ring_label(x.ring());
  Json ranks = Json::object(), d = Json::object();
  for (const auto& [n, r] : x.ranks())
    if (r) ranks[std::to_string(n)] = r;
  if (!x.is_zero())
    for (int n = x.lo() + 1; n <= x.hi(); ++n)
      if (x.rank(n) && x.rank(n - 1) && !x.d(n).is_zero()) d[std::to_string(n)] = to_json(x.d(n));
  j["ranks"] = ranks;
  j["d"] = d;
  return j;
}

ChainComplex complex_from_json(const Json& j) { return complex_from_json(j, ring_of(j)); }

ChainComplex complex_from_json(const Json& j, const Ring& ring) {
  std::map<int, std::size_t> ranks;
  for (const auto& [k, v] : field(j, "ranks").items()) {
    if (!v.is_number_unsigned()) throw InputError("rank in degree " + k + " must be a non-negative integer");
    ranks[degree_key(k)] = v.get<std::size_t>();
  }
  auto rank = [&](int n) {
    auto it = ranks.find(n);
    return it == ranks.end() ? std::size_t{0} : it->second;
  };
  std::map<int, Matrix> d;
  if (j.contains("d"))
    for (const auto& [k, v] : j.at("d").items()) {
      int n = degree_key(k);
      try {
        d[n] = matrix_from_json(v, ring, rank(n - 1), rank(n));
      } catch (const InputError& e) {
        throw InputError("differential at degree " + k + ": " + e.what());
      }
    }
  return ChainComplex(ring, ranks, d);
}

Json to_json(const ChainMap& f) {
  Json j;
  j["src"] = to_json(f.src());
  j["dst"] = to_json(f.dst());
  Json comps = Json::object();
  if (!f.src().is_zero())
    for (int n = f.src().lo(); n <= f.src().hi(); ++n)
      if (f.src().rank(n) && f.dst().rank(n)) comps[std::to_string(n)] = to_json(f.at(n));
  j["components"] = comps;
  return j;
}

ChainMap chain_map_from_json(const Json& j) {
  ChainComplex src = complex_from_json(field(j, "src"));
  ChainComplex dst = complex_from_json(field(j, "dst"));
  std::map<int, Matrix> m;
  if (j.contains("components"))
    for (const auto& [k, v] : j.at("components").items()) {
      int n = degree_key(k);
      m[n] = matrix_from_json(v, src.ring(), dst.rank(n), src.rank(n));
    }
  return ChainMap(src, dst, m);
}

Json to_json(const ReedyCategory& c) {
  Json j;
  Json objs = Json::array(), mors = Json::array(), comp = Json::object(), fac = Json::object();
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    const auto& o = c.object(static_cast<int>(x));
    objs.push_back({{"name", o.name}, {"degree", o.degree}});
  }
  const int nm = static_cast<int>(c.morphism_count());
  for (int f = 0; f < nm; ++f) {
    const auto& m = c.morphism(f);
    mors.push_back({{"name", m.name}, {"src", c.object(m.src).name}, {"dst", c.object(m.dst).name}, {"tag", tag_name(m.tag)}});
  }
  for (int g = 0; g < nm; ++g) {
    Json row = Json::object();
    for (int f = 0; f < nm; ++f)
      if (c.morphism(g).src == c.morphism(f).dst) row[c.morphism(f).name] = c.morphism(c.compose(g, f)).name;
    if (!row.empty()) comp[c.morphism(g).name] = row;
  }
  for (int f = 0; f < nm; ++f) {
    const auto [q, i] = c.factor(f);
    fac[c.morphism(f).name] = {{"minus", c.morphism(q).name}, {"plus", c.morphism(i).name}};
  }
  j["objects"] = objs;
  j["morphisms"] = mors;
  j["compose"] = comp;
  j["factor"] = fac;
  return j;
}

ReedyCategory category_from_json(const Json& j) {
  std::vector<ReedyObject> objs;
  std::map<std::string, int> obj_index, mor_index;
  for (const auto& o : field(j, "objects")) {
    std::string name = field(o, "name").get<std::string>();
    obj_index[name] = static_cast<int>(objs.size());
    objs.push_back({name, field(o, "degree").get<int>()});
  }
  auto object = [&](const Json& v) {
    auto it = obj_index.find(v.get<std::string>());
    if (it == obj_index.end()) throw InputError("unknown object '" + v.get<std::string>() + "'");
    return it->second;
  };
  std::vector<ReedyMorphism> mors;
  for (const auto& m : field(j, "morphisms")) {
    std::string name = field(m, "name").get<std::string>();
    mor_index[name] = static_cast<int>(mors.size());
    mors.push_back({name, object(field(m, "src")), object(field(m, "dst")), parse_tag(field(m, "tag").get<std::string>())});
  }
  auto morphism = [&](const std::string& name) {
    auto it = mor_index.find(name);
    if (it == mor_index.end()) throw InputError("unknown morphism '" + name + "'");
    return it->second;
  };
  std::map<std::pair<int, int>, int> comp;
  if (j.contains("compose"))
    for (const auto& [g, row] : j.at("compose").items())
      for (const auto& [f, gf] : row.items()) comp[{morphism(g), morphism(f)}] = morphism(gf.get<std::string>());
  std::map<int, std::pair<int, int>> fac;
  if (j.contains("factor"))
    for (const auto& [f, qi] : j.at("factor").items())
      fac[morphism(f)] = {morphism(field(qi, "minus").get<std::string>()), morphism(field(qi, "plus").get<std::string>())};
  return ReedyCategory(objs, mors, comp, fac);
}

DGAlgebra algebra_from_json(const Json& j) {
  const Ring ring = ring_of(j);
  std::vector<Generator> gens;
  std::map<std::string, int> index;
  for (const auto& g : field(j, "generators")) {
    std::string name = field(g, "name").get<std::string>();
    index[name] = static_cast<int>(gens.size());
    gens.push_back({name, field(g, "degree").get<int>()});
  }
  std::vector<WordVec> d(gens.size());
  if (j.contains("differential"))
    for (const auto& [name, terms] : j.at("differential").items()) {
      auto it = index.find(name);
      if (it == index.end()) throw InputError("differential of unknown generator '" + name + "'");
      for (const auto& t : terms) {
        Word w;
        for (const auto& l : field(t, "word")) {
          auto li = index.find(l.get<std::string>());
          if (li == index.end()) throw InputError("unknown generator '" + l.get<std::string>() + "'");
          w.push_back(li->second);
        }
        accumulate(d[it->second], w, scalar_of(field(t, "coeff"), ring), ring);
      }
    }
  return truncated_tensor_algebra(ring, gens, d, field(j, "max_weight").get<std::size_t>());
}

DGCoalgebra coalgebra_from_json(const Json& j) {
  const Ring ring = ring_of(j);
  ChainComplex x = complex_from_json(field(j, "complex"), ring);
  std::vector<std::string> names = field(j, "names").get<std::vector<std::string>>();
  if (names.size() != x.total_rank()) throw InputError("need one name per cell of the complex");
  return named_cofree(x, field(j, "max_weight").get<std::size_t>(), names);
}

std::string json_kind(const Json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (j.contains("kind")) return j.at("kind").get<std::string>();
  if (j.contains("objects")) return "category";
  if (j.contains("components")) return "chain_map";
  if (j.contains("generators")) return "algebra";
  if (j.contains("names")) return "coalgebra";
  if (j.contains("ranks")) return "complex";
  throw InputError("cannot tell what the JSON document describes");
}

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dgw

#include "repring/ring_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace repring {

using nlohmann::json;

std::string export_ring_json(const RingSpec& ring) {
  if (!ring.is_finite())
    throw RingError(Err::InfiniteComplement,
                    "only finite rings can be exported");
  json out;
  out["name"] = ring.name();
  out["identity"] = ring.label_of(ring.identity());
  out["closed"] = ring.closed();
  json basis = json::array();
  for (const auto& m : ring.basis()) {
    json b;
    b["label"] = m.label;
    b["dim"] = m.dim.get_si();
    b["star"] = ring.label_of(m.star);
    b["rho_mult"] = m.rho_mult.get_si();
    basis.push_back(std::move(b));
  }
  out["basis"] = std::move(basis);
  json products = json::array();
  const int r = ring.rank();
  for (BasisId i = 0; i < r; ++i)
    for (BasisId j = i; j < r; ++j) {
      json p;
      p["i"] = ring.label_of(i);
      p["j"] = ring.label_of(j);
      json terms = json::array();
      for (const auto& [k, c] : ring.product(i, j).terms()) {
        json t;
        t["k"] = ring.label_of(k);
        if (c.get_den() != 1 || !c.get_num().fits_slong_p())
          throw RingError(Err::BadParams,
                          "structure constant not an int64: " + c.get_str());
        t["c"] = c.get_num().get_si();
        terms.push_back(std::move(t));
      }
      p["terms"] = std::move(terms);
      products.push_back(std::move(p));
    }
  out["products"] = std::move(products);
  return out.dump(2);
}

RingSpec load_ring_json(const std::string& text, bool validate) {
  json in;
  try {
    in = json::parse(text);
  } catch (const std::exception& e) {
    throw RingError(Err::ParseError, std::string("invalid JSON: ") + e.what());
  }
  auto need = [&in](const char* key) -> const json& {
    if (!in.contains(key))
      throw RingError(Err::ParseError,
                      std::string("missing field '") + key + "'");
    return in[key];
  };
  const std::string name = need("name").get<std::string>();
  const std::string identity = need("identity").get<std::string>();
  const bool closed = need("closed").get<bool>();

  std::vector<BasisMeta> metas;
  std::unordered_map<std::string, BasisId> by_label;
  std::vector<std::string> star_labels;
  for (const auto& b : need("basis")) {
    BasisMeta m;
    m.label = b.at("label").get<std::string>();
    m.dim = Int(b.at("dim").get<long>());
    m.rho_mult = Int(b.at("rho_mult").get<long>());
    star_labels.push_back(b.at("star").get<std::string>());
    if (by_label.count(m.label))
      throw RingError(Err::ParseError, "duplicate basis label " + m.label);
    by_label[m.label] = static_cast<BasisId>(metas.size());
    metas.push_back(std::move(m));
  }
  auto resolve = [&by_label](const std::string& lab) {
    auto it = by_label.find(lab);
    if (it == by_label.end())
      throw RingError(Err::ParseError, "unknown basis label " + lab);
    return it->second;
  };
  for (std::size_t i = 0; i < metas.size(); ++i)
    metas[i].star = resolve(star_labels[i]);

  RingSpec ring =
      RingSpec::finite(name, std::move(metas), resolve(identity), closed);

  const int r = ring.rank();
  std::vector<bool> seen(static_cast<std::size_t>(r) * r, false);
  for (const auto& p : need("products")) {
    BasisId i = resolve(p.at("i").get<std::string>());
    BasisId j = resolve(p.at("j").get<std::string>());
    Element e;
    for (const auto& t : p.at("terms")) {
      BasisId k = resolve(t.at("k").get<std::string>());
      e.add_term(k, Rational(t.at("c").get<long>()));
    }
    ring.set_product(i, j, std::move(e));
    seen[static_cast<std::size_t>(std::min(i, j)) * r + std::max(i, j)] = true;
  }
  for (BasisId i = 0; i < r; ++i)
    for (BasisId j = i; j < r; ++j)
      if (!seen[static_cast<std::size_t>(i) * r + j])
        throw RingError(Err::ParseError,
                        "missing product pair {" + ring.label_of(i) + ", " +
                            ring.label_of(j) + "}");

  if (validate) {
    AxiomReport rep = verify_axioms(ring);
    std::string failed;
    for (const auto& c : rep.checks)
      if (!c.pass)
        failed += (failed.empty() ? "" : "; ") + c.axiom +
                  " (witness: " + c.witness + ")";
    if (!failed.empty())
      throw RingError(Err::AxiomViolation, "axiom checks failed: " + failed);
  }
  return ring;
}

RingSpec load_ring_file(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw RingError(Err::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_ring_json(ss.str(), validate);
}

void save_ring_file(const RingSpec& ring, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw RingError(Err::IoError, "cannot open " + path);
  out << export_ring_json(ring) << "\n";
}

}  // namespace repring

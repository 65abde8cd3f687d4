// SPDX-License-Identifier: Apache-2.0
#include "bilmult/json_io.hpp"

#include "bilmult/error.hpp"

namespace bilmult {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t as_uint(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) invalid(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

Json poly_to_json(const FieldDescriptor& below, const Poly& low) {
  Json arr = Json::array();
  for (const Element& c : low) arr.push_back(element_to_json(below, c));
  return arr;
}

Poly poly_from_json(const FieldDescriptor& below, const Json& j) {
  if (!j.is_array() || j.empty()) invalid("modulus must be a non-empty array");
  Poly low;
  for (const Json& c : j) low.push_back(element_from_json(below, c));
  return low;
}

std::vector<Element> vector_from_json(const FieldDescriptor& K, const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) invalid(std::string(what) + " must be an array of length n");
  std::vector<Element> v;
  for (const Json& c : j) v.push_back(element_from_json(K, c));
  return v;
}

Json vector_to_json(const FieldDescriptor& K, const std::vector<Element>& v) {
  Json arr = Json::array();
  for (const Element& e : v) arr.push_back(element_to_json(K, e));
  return arr;
}

}  // namespace

Json field_to_json(const FieldDescriptor& F) {
  Json j;
  j["p"] = F.characteristic();
  Json chain = Json::array();
  for (std::size_t level = 0; level < F.levels(); ++level) chain.push_back(poly_to_json(F.truncated(level), F.chain()[level].modulus));
  j["chain"] = chain;
  return j;
}

FieldDescriptor field_from_json(const Json& j) {
  const std::uint64_t p = as_uint(member(j, "p"), "p");
  FieldDescriptor F = [&] {
    try {
      return field_make_prime(p);
    } catch (const Error& e) {
      invalid(e.what());
    }
  }();
  const Json& chain = member(j, "chain");
  if (!chain.is_array()) invalid("chain must be an array");
  for (const Json& m : chain) F = F.extended_by(poly_from_json(F, m));
  return F;
}

Json element_to_json(const FieldDescriptor& F, const Element& x) {
  if (F.levels() == 0) return x.at(0);
  const FieldDescriptor below = F.below();
  Json arr = Json::array();
  for (const Element& c : coordinates_over(F, below, x)) arr.push_back(element_to_json(below, c));
  return arr;
}

Element element_from_json(const FieldDescriptor& F, const Json& j) {
  if (F.levels() == 0) {
    const std::uint64_t v = as_uint(j, "coefficient");
    if (v >= F.characteristic()) invalid("coefficient out of range [0, p)");
    return Element{static_cast<Residue>(v)};
  }
  const FieldDescriptor below = F.below();
  if (!j.is_array() || j.size() != F.top_degree()) invalid("tower coefficient has wrong shape");
  std::vector<Element> coords;
  for (const Json& c : j) coords.push_back(element_from_json(below, c));
  return from_coordinates(F, below, coords);
}

Json decomposition_to_json_value(const BilinearDecomposition& d) {
  const FieldDescriptor& K = d.base();
  const FieldDescriptor& E = d.extension();
  Json j;
  j["q"] = field_to_json(K);
  j["n"] = d.n();
  if (d.steps() <= 1) {
    j["modulus"] = d.steps() == 0 ? Json::array({element_to_json(K, gf_zero(K))}) : poly_to_json(K, E.chain().back().modulus);
  } else {
    Json tower = Json::array();
    for (std::size_t level = K.levels(); level < E.levels(); ++level) tower.push_back(poly_to_json(E.truncated(level), E.chain()[level].modulus));
    j["tower"] = tower;
  }
  j["rank"] = d.rank();
  Json triples = Json::array();
  for (const Triple& t : d.triples()) {
    Json tj;
    tj["a"] = vector_to_json(K, t.a);
    tj["b"] = vector_to_json(K, t.b);
    tj["c"] = vector_to_json(K, t.c);
    triples.push_back(tj);
  }
  j["triples"] = triples;
  return j;
}

std::string decomposition_to_json(const BilinearDecomposition& d) { return decomposition_to_json_value(d).dump(2) + "\n"; }

BilinearDecomposition decomposition_from_json_value(const Json& j, bool skip_verify) {
  if (!j.is_object()) invalid("decomposition must be a JSON object");
  const FieldDescriptor K = field_from_json(member(j, "q"));
  const std::uint64_t n = as_uint(member(j, "n"), "n");
  if (n == 0) invalid("n must be positive");
  FieldDescriptor E = K;
  if (j.contains("tower")) {
    const Json& tower = j.at("tower");
    if (!tower.is_array()) invalid("tower must be an array");
    for (const Json& m : tower) E = E.extended_by(poly_from_json(E, m));
  } else {
    const Poly low = poly_from_json(K, member(j, "modulus"));
    if (low.size() != n) invalid("modulus length must equal n");
    if (n > 1) E = K.extended_by(low);
  }
  if (E.degree_over(K) != n) invalid("n does not match the extension degree");
  const std::uint64_t rank = as_uint(member(j, "rank"), "rank");
  const Json& tj = member(j, "triples");
  if (!tj.is_array()) invalid("triples must be an array");
  if (tj.size() != rank) invalid("rank does not match the number of triples");
  std::vector<Triple> triples;
  for (const Json& t : tj) {
    triples.push_back(Triple{vector_from_json(K, member(t, "a"), n, "a"), vector_from_json(K, member(t, "b"), n, "b"),
                             vector_from_json(K, member(t, "c"), n, "c")});
  }
  BilinearDecomposition d(K, E, std::move(triples));
  if (!skip_verify && !verify_decomposition(d)) invalid("decomposition does not compute the field product");
  return d;
}

BilinearDecomposition decomposition_from_json(const std::string& text, bool skip_verify) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    return decomposition_from_json_value(j, skip_verify);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

}  // namespace bilmult

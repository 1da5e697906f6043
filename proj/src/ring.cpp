// Copyright 2026 The fkdet authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fkdet/ring.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace fkdet {

RatElement to_rational(const IntElement& f) {
  RatElement out(f.spec());
  for (const auto& [gamma, a] : f.support())
    out.add_term(gamma, mpq_class(a));
  return out;
}

FloatElement to_float(const IntElement& f) {
  FloatElement out(f.spec());
  for (const auto& [gamma, a] : f.support()) out.add_term(gamma, a.get_d());
  return out;
}

FloatElement to_float(const RatElement& f) {
  FloatElement out(f.spec());
  for (const auto& [gamma, a] : f.support()) out.add_term(gamma, a.get_d());
  return out;
}

IntElement to_int(const RatElement& f) {
  IntElement out(f.spec());
  for (const auto& [gamma, a] : f.support()) {
    if (a.get_den() != 1)
      throw Error("to_int: coefficient " + a.get_str() +
                  " is not an integer");
    out.add_term(gamma, a.get_num());
  }
  return out;
}

CoeffKind kind_of(const AnyElement& f) {
  return std::visit(
      [](const auto& elem) {
        return CoeffTraits<
            typename std::decay_t<decltype(elem)>::Coeff>::kind;
      },
      f);
}

const GroupSpec& spec_of(const AnyElement& f) {
  return std::visit(
      [](const auto& elem) -> const GroupSpec& { return elem.spec(); }, f);
}

namespace {

struct RawTerm {
  std::string coeff;
  std::string encoding;
  int line_no = 0;
};

std::vector<RawTerm> split_terms(const std::string& text) {
  std::vector<RawTerm> terms;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t sep = line.find_first_of(" \t", start);
    if (sep == std::string::npos)
      throw MalformedElementError("line " + std::to_string(line_no) +
                                  ": expected `coeff<TAB>(encoding)`, got '" +
                                  line + "'");
    std::size_t enc = line.find_first_not_of(" \t", sep);
    if (enc == std::string::npos)
      throw MalformedElementError("line " + std::to_string(line_no) +
                                  ": missing element encoding");
    std::string tail = line.substr(enc);
    while (!tail.empty() && (tail.back() == ' ' || tail.back() == '\t' ||
                             tail.back() == '\r'))
      tail.pop_back();
    terms.push_back({line.substr(start, sep - start), tail, line_no});
  }
  return terms;
}

CoeffKind infer_kind(const std::vector<RawTerm>& terms) {
  bool rational = false;
  for (const auto& t : terms) {
    for (char c : t.coeff) {
      if (c == '.' || c == 'e' || c == 'E') return CoeffKind::Float;
      if (c == '/') rational = true;
    }
  }
  return rational ? CoeffKind::ExactRational : CoeffKind::ExactInt;
}

template <typename C, typename ParseCoeff>
RingElement<C> build(const std::vector<RawTerm>& terms, const GroupSpec& spec,
                     ParseCoeff parse_coeff) {
  RingElement<C> out(spec);
  for (const auto& t : terms) {
    C value;
    try {
      value = parse_coeff(t.coeff);
    } catch (const std::exception&) {
      throw MalformedElementError("line " + std::to_string(t.line_no) +
                                  ": bad coefficient '" + t.coeff + "'");
    }
    try {
      out.add_term(parse_element(t.encoding, spec), value);
    } catch (const MalformedElementError& e) {
      throw MalformedElementError("line " + std::to_string(t.line_no) + ": " +
                                  e.what());
    }
  }
  return out;
}

std::string double_to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <typename C, typename Stringify>
std::string serialize_impl(const RingElement<C>& f, Stringify stringify) {
  std::ostringstream out;
  for (const auto& [gamma, a] : f.support())
    out << stringify(a) << '\t' << encode_element(gamma) << '\n';
  return out.str();
}

}  // namespace

AnyElement parse_ring_element(const std::string& text, const GroupSpec& spec) {
  const auto terms = split_terms(text);
  if (terms.empty())
    throw MalformedElementError("no terms in element text");
  switch (infer_kind(terms)) {
    case CoeffKind::ExactInt:
      return build<mpz_class>(terms, spec, [](const std::string& s) {
        return mpz_class(s);
      });
    case CoeffKind::ExactRational:
      return build<mpq_class>(terms, spec, [](const std::string& s) {
        mpq_class q(s);
        q.canonicalize();
        return q;
      });
    case CoeffKind::Float:
      return build<double>(terms, spec, [](const std::string& s) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      });
  }
  throw Error("unreachable coefficient kind");
}

std::string serialize_ring_element(const IntElement& f) {
  return serialize_impl(f, [](const mpz_class& a) { return a.get_str(); });
}

std::string serialize_ring_element(const RatElement& f) {
  return serialize_impl(f, [](const mpq_class& a) { return a.get_str(); });
}

std::string serialize_ring_element(const FloatElement& f) {
  return serialize_impl(f, [](double a) { return double_to_string(a); });
}

std::string serialize_ring_element(const AnyElement& f) {
  return std::visit(
      [](const auto& elem) { return serialize_ring_element(elem); }, f);
}

}  // namespace fkdet

#include "penta/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "penta/errors.hpp"

namespace penta {

namespace {

struct Term {
  int coeff = 0;
  int index = -1;  // -1 for a numeric constant
  bool edge = false;
  double value = 0.0;
};

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Term> parse_side(const std::string& side) {
  std::vector<Term> terms;
  std::size_t i = 0;
  while (i < side.size()) {
    int sign = 1;
    if (side[i] == '+' || side[i] == '-') {
      sign = side[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < side.size() && (std::isdigit(static_cast<unsigned char>(side[j])) || side[j] == '.'))
      ++j;
    const std::string number = side.substr(i, j - i);
    Term t;
    if (j < side.size() && std::isalpha(static_cast<unsigned char>(side[j]))) {
      const char letter = side[j];
      t.coeff = sign * (number.empty() ? 1 : std::stoi(number));
      t.edge = std::islower(static_cast<unsigned char>(letter)) != 0;
      t.index = std::tolower(static_cast<unsigned char>(letter)) - 'a';
      if (t.index < 0 || t.index > 4) throw Error(ErrorCode::ParseError, "bad symbol in " + side);
      ++j;
    } else {
      if (number.empty()) throw Error(ErrorCode::ParseError, "bad term in " + side);
      t.value = sign * std::stod(number);
    }
    terms.push_back(t);
    i = j;
  }
  return terms;
}

const std::array<const char*, 15> kConditionText = {
    "A+B+C=360",
    "A+B+D=360; a=d",
    "A=120, C=120, D=120; a=b, d=c+e",
    "B=90, D=90; b=c, d=e",
    "A=60, D=120; a=b, d=e",
    "B+D=180, 2B=E; a=d, a=e, b=c",
    "2B+A=360, 2E+C=360; a=b, b=c, c=d",
    "2B+C=360, D+2E=360; b=c, c=d, d=e",
    "2A+C=360, D+2E=360; b=c, c=d, d=e",
    "A=90, B+E=180, B+2C=360; a=b, b=c+e",
    "A=90, 2B+C=360, C+E=180; 2a+c=d, d=e",
    "A=90, 2B+C=360, C+E=180; 2a=d, d=c+e",
    "B=90, E=90, 2A+D=360; d=2a, a=e",
    "A=90, 2B+C=360, C+E=180; a=c, 2c=d, d=e",
    "A=150, B=60, C=135, D=105, E=90; a=c, c=e, b=2a",
};

const std::vector<TypeConditions>& catalog() {
  static const std::vector<TypeConditions> types = [] {
    std::vector<TypeConditions> out;
    for (int i = 0; i < 15; ++i) out.push_back(parse_conditions(i + 1, kConditionText[i]));
    return out;
  }();
  return types;
}

}  // namespace

TypeConditions parse_conditions(int id, const std::string& text) {
  TypeConditions t;
  t.id = id;
  t.text = text;
  for (const std::string& group : split(strip(text), ';')) {
    for (const std::string& rel : split(group, ',')) {
      if (rel.empty()) continue;
      const auto sides = split(rel, '=');
      if (sides.size() != 2) throw Error(ErrorCode::ParseError, "relation needs one '=': " + rel);
      std::array<int, 5> coeffs{};
      double constant = 0.0;
      bool any_angle = false;
      bool any_edge = false;
      for (int s = 0; s < 2; ++s) {
        const int side_sign = s == 0 ? 1 : -1;
        for (const Term& term : parse_side(sides[s])) {
          if (term.index < 0) {
            constant -= side_sign * term.value;
          } else {
            coeffs[term.index] += side_sign * term.coeff;
            (term.edge ? any_edge : any_angle) = true;
          }
        }
      }
      if (any_angle && any_edge) throw Error(ErrorCode::ParseError, "mixed relation: " + rel);
      if (any_edge) {
        if (constant != 0.0) throw Error(ErrorCode::ParseError, "edge relations are homogeneous");
        t.edge_relations.push_back({coeffs});
      } else {
        t.angle_relations.push_back({coeffs, constant});
      }
    }
  }
  return t;
}

const TypeConditions& conditions_of(int type_id) {
  if (type_id < 1 || type_id > 15)
    throw Error(ErrorCode::UnknownType, "type id must be in 1..15, got " + std::to_string(type_id));
  return catalog()[static_cast<std::size_t>(type_id - 1)];
}

double relation_residual(const TypeConditions& t, const PentagonShape& p, const Labeling& g) {
  const double scale = p.mean_edge();
  double worst = 0.0;
  for (const AngleRelation& r : t.angle_relations) {
    double s = -r.constant_rad();
    for (int j = 0; j < 5; ++j) s += r.coeffs[j] * p.angle(g.angle_source(j));
    worst = std::max(worst, std::abs(s));
  }
  for (const EdgeRelation& r : t.edge_relations) {
    double s = 0.0;
    for (int j = 0; j < 5; ++j) s += r.coeffs[j] * p.edge(g.edge_source(j));
    worst = std::max(worst, std::abs(s) / scale);
  }
  return worst;
}

TypeResidual best_residual(const TypeConditions& t, const PentagonShape& p) {
  TypeResidual best{t.id, 1e300, {}};
  for (const Labeling& g : Labeling::all()) {
    const double r = relation_residual(t, p, g);
    if (r < best.residual) best = {t.id, r, g};
  }
  return best;
}

bool satisfies(const TypeConditions& t, const PentagonShape& p, double tol) {
  return best_residual(t, p).residual <= tol;
}

std::vector<int> membership(const PentagonShape& p, double tol) {
  std::vector<int> out;
  for (const TypeConditions& t : catalog()) {
    if (satisfies(t, p, tol)) out.push_back(t.id);
  }
  return out;
}

std::vector<TypeResidual> residual_table(const PentagonShape& p) {
  std::vector<TypeResidual> out;
  for (const TypeConditions& t : catalog()) out.push_back(best_residual(t, p));
  return out;
}

}  // namespace penta

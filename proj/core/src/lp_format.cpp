#include <ostream>

#include "vsparse/lp.hpp"

namespace vsparse::lp {

namespace {

mpz_class denominator_lcm(const std::vector<const Rational*>& values) {
  mpz_class l = 1;
  for (const Rational* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

void write_linear(std::ostream& out, const std::vector<std::pair<std::size_t, Rational>>& terms) {
  if (terms.empty()) {
    out << " 0 x0";
    return;
  }
  for (const auto& [var, coeff] : terms) {
    out << (sgn(coeff) < 0 ? " - " : " + ") << Rational(abs(coeff)).get_num().get_str() << " x" << var;
  }
}

}  // namespace

void write_lp_format(std::ostream& out, const LinearProgram& program) {
  std::vector<const Rational*> objective_values;
  for (const Rational& c : program.objective()) objective_values.push_back(&c);
  const mpz_class obj_scale = denominator_lcm(objective_values);
  out << "\\ objective scaled by " << obj_scale.get_str() << "\n";
  out << (program.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n") << " obj:";
  std::vector<std::pair<std::size_t, Rational>> terms;
  for (std::size_t j = 0; j < program.variable_count(); ++j) {
    if (!is_zero(program.objective()[j])) terms.emplace_back(j, program.objective()[j] * obj_scale);
  }
  write_linear(out, terms);
  out << "\nSubject To\n";
  std::size_t index = 0;
  auto write_row = [&](const std::vector<std::pair<std::size_t, Rational>>& raw, Relation rel, const Rational& rhs) {
    std::vector<const Rational*> values{&rhs};
    for (const auto& t : raw) values.push_back(&t.second);
    const mpz_class scale = denominator_lcm(values);
    std::vector<std::pair<std::size_t, Rational>> scaled;
    for (const auto& [var, coeff] : raw) scaled.emplace_back(var, coeff * scale);
    out << " c" << index++ << ":";
    write_linear(out, scaled);
    out << (rel == Relation::kLessEqual ? " <= " : rel == Relation::kGreaterEqual ? " >= " : " = ");
    out << Rational(rhs * scale).get_num().get_str() << "\n";
  };
  for (const Constraint& c : program.constraints()) {
    std::vector<std::pair<std::size_t, Rational>> raw;
    for (const Term& t : c.terms) raw.emplace_back(t.var, t.coeff);
    write_row(raw, c.relation, c.rhs);
  }
  for (std::size_t j = 0; j < program.variable_count(); ++j) {
    const Bounds& b = program.bounds()[j];
    if (b.upper && b.upper->get_den() != 1) write_row({{j, Rational(1)}}, Relation::kLessEqual, *b.upper);
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < program.variable_count(); ++j) {
    const Bounds& b = program.bounds()[j];
    const bool integral_upper = b.upper && b.upper->get_den() == 1;
    if (!b.nonnegative) {
      out << " -inf <= x" << j << " <= " << (integral_upper ? b.upper->get_num().get_str() : "+inf") << "\n";
    } else if (integral_upper) {
      out << " 0 <= x" << j << " <= " << b.upper->get_num().get_str() << "\n";
    }
  }
  out << "End\n";
}

}  // namespace vsparse::lp

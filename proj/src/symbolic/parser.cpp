#include "tampkit/symbolic/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tampkit::symbolic {

bool DomainModel::is_subtype(TypeId t, TypeId ancestor) const {
  while (true) {
    if (t == ancestor) return true;
    const auto& parent = types[t].parent;
    if (!parent) return false;
    t = *parent;
  }
}

std::optional<PredicateId> DomainModel::find_predicate(const std::string& name) const {
  auto it = predicate_index.find(name);
  if (it == predicate_index.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    if (pos_ >= text_.size()) return {Token::End, "", line_, col_};
    const int line = line_, col = col_;
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::LParen, "(", line, col};
    }
    if (c == ')') {
      advance();
      return {Token::RParen, ")", line, col};
    }
    std::string sym;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      sym.push_back(text_[pos_]);
      advance();
    }
    return {Token::Symbol, sym, line, col};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.column);
  }

  void expect_lparen() {
    if (cur_.kind != Token::LParen) fail("expected '('");
    shift();
  }
  void expect_rparen() {
    if (cur_.kind != Token::RParen) fail("expected ')'");
    shift();
  }
  std::string expect_symbol(const std::string& what) {
    if (cur_.kind != Token::Symbol) fail("expected " + what);
    std::string s = cur_.text;
    shift();
    return s;
  }
  void expect_keyword(const std::string& kw) {
    if (cur_.kind != Token::Symbol || cur_.text != kw) fail("expected '" + kw + "'");
    shift();
  }
  bool at_symbol(const std::string& s) const {
    return cur_.kind == Token::Symbol && cur_.text == s;
  }
  bool at_lparen() const { return cur_.kind == Token::LParen; }
  bool at_rparen() const { return cur_.kind == Token::RParen; }
  const Token& cur() const { return cur_; }
  void shift() { cur_ = lexer_.next(); }

 private:
  Lexer lexer_;
  Token cur_;
};

struct TypedNames {
  std::vector<std::pair<std::string, std::string>> entries;  // (name, type name)
};

// Parses `name+ (- type)?` groups until ')'. Untyped names get `object`.
TypedNames parse_typed_list(Parser& p, const std::string& what) {
  TypedNames out;
  std::vector<std::string> pending;
  while (!p.at_rparen()) {
    std::string tok = p.expect_symbol(what);
    if (tok == "-") {
      const std::string type = p.expect_symbol("type name");
      for (auto& n : pending) out.entries.emplace_back(std::move(n), type);
      pending.clear();
    } else {
      pending.push_back(std::move(tok));
    }
  }
  for (auto& n : pending) out.entries.emplace_back(std::move(n), "object");
  return out;
}

class DomainBuilder {
 public:
  DomainModel build(std::string_view text) {
    Parser p(text);
    p.expect_lparen();
    p.expect_keyword("define");
    p.expect_lparen();
    p.expect_keyword("domain");
    model_.name = p.expect_symbol("domain name");
    p.expect_rparen();

    // Root type is always present.
    add_type("object", std::nullopt);

    while (p.at_lparen()) {
      p.shift();
      const std::string section = p.expect_symbol("section keyword");
      if (section == ":requirements") {
        parse_requirements(p);
      } else if (section == ":types") {
        parse_types(p);
      } else if (section == ":constants") {
        parse_constants(p);
      } else if (section == ":predicates") {
        parse_predicates(p);
      } else if (section == ":action") {
        parse_action(p);
      } else {
        p.fail("unsupported section '" + section + "'");
      }
    }
    p.expect_rparen();
    return std::move(model_);
  }

 private:
  void parse_requirements(Parser& p) {
    while (!p.at_rparen()) {
      const Token tok = p.cur();
      const std::string req = p.expect_symbol("requirement flag");
      if (req != ":strips" && req != ":typing" && req != ":negative-preconditions")
        throw ParseError("unsupported requirement '" + req + "'", tok.line, tok.column);
    }
    p.expect_rparen();
  }

  void parse_types(Parser& p) {
    const Token at = p.cur();
    TypedNames list = parse_typed_list(p, "type name");
    p.expect_rparen();
    // Two passes so forward references to sibling types resolve.
    for (const auto& [name, parent] : list.entries) {
      (void)parent;
      if (!model_.type_index.count(name)) add_type(name, model_.root_type());
    }
    for (const auto& [name, parent] : list.entries) {
      if (!model_.type_index.count(parent))
        throw ParseError("undeclared type '" + parent + "'", at.line, at.column);
      model_.types[model_.type_index.at(name)].parent = model_.type_index.at(parent);
    }
  }

  void parse_constants(Parser& p) {
    const Token at = p.cur();
    TypedNames list = parse_typed_list(p, "constant name");
    p.expect_rparen();
    for (const auto& [name, type] : list.entries) {
      auto it = model_.type_index.find(type);
      if (it == model_.type_index.end())
        throw ParseError("undeclared type '" + type + "'", at.line, at.column);
      if (constant_index_.count(name))
        throw ParseError("duplicate constant '" + name + "'", at.line, at.column);
      constant_index_[name] = static_cast<ObjectId>(model_.constants.size());
      model_.constants.push_back({name, it->second});
    }
  }

  void parse_predicates(Parser& p) {
    while (p.at_lparen()) {
      p.shift();
      const Token at = p.cur();
      const std::string name = p.expect_symbol("predicate name");
      if (model_.predicate_index.count(name))
        throw ParseError("duplicate predicate '" + name + "'", at.line, at.column);
      TypedNames params = parse_typed_list(p, "parameter");
      p.expect_rparen();
      PredicateDecl decl{name, {}};
      for (const auto& [pname, ptype] : params.entries) {
        (void)pname;
        auto it = model_.type_index.find(ptype);
        if (it == model_.type_index.end())
          throw ParseError("undeclared type '" + ptype + "'", at.line, at.column);
        decl.param_types.push_back(it->second);
      }
      model_.predicate_index[name] = static_cast<PredicateId>(model_.predicates.size());
      model_.predicates.push_back(std::move(decl));
    }
    p.expect_rparen();
  }

  void parse_action(Parser& p) {
    ActionSchema schema;
    schema.name = p.expect_symbol("action name");
    p.expect_keyword(":parameters");
    p.expect_lparen();
    const Token at = p.cur();
    TypedNames params = parse_typed_list(p, "parameter");
    p.expect_rparen();
    std::unordered_map<std::string, uint32_t> param_index;
    for (const auto& [pname, ptype] : params.entries) {
      if (pname.empty() || pname[0] != '?')
        throw ParseError("parameter must start with '?'", at.line, at.column);
      auto it = model_.type_index.find(ptype);
      if (it == model_.type_index.end())
        throw ParseError("undeclared type '" + ptype + "'", at.line, at.column);
      param_index[pname] = static_cast<uint32_t>(schema.parameters.size());
      schema.parameters.push_back({pname, it->second});
    }

    while (!p.at_rparen()) {
      const std::string part = p.expect_symbol("action part");
      if (part == ":precondition") {
        parse_condition(p, schema, param_index, /*is_effect=*/false);
      } else if (part == ":effect") {
        parse_condition(p, schema, param_index, /*is_effect=*/true);
      } else {
        p.fail("unsupported action part '" + part + "'");
      }
    }
    p.expect_rparen();

    const auto touches_attached = [&](const std::vector<LiftedAtom>& atoms) {
      return std::any_of(atoms.begin(), atoms.end(), [&](const LiftedAtom& a) {
        return model_.predicates[a.predicate].name == kAttachedPredicate;
      });
    };
    schema.kind = (touches_attached(schema.add_effects) || touches_attached(schema.del_effects))
                      ? ActionKind::Geometric
                      : ActionKind::NonGeometric;
    model_.schemas.push_back(std::move(schema));
  }

  // Parses an atom, (not atom), or (and ...) of those.
  void parse_condition(Parser& p, ActionSchema& schema,
                       const std::unordered_map<std::string, uint32_t>& params, bool is_effect) {
    p.expect_lparen();
    if (p.at_symbol("and")) {
      p.shift();
      while (p.at_lparen()) {
        p.shift();
        parse_literal(p, schema, params, is_effect);
      }
      p.expect_rparen();
      return;
    }
    parse_literal(p, schema, params, is_effect);
  }

  // Called just after '(' of a literal.
  void parse_literal(Parser& p, ActionSchema& schema,
                     const std::unordered_map<std::string, uint32_t>& params, bool is_effect) {
    bool negated = false;
    if (p.at_symbol("not")) {
      p.shift();
      p.expect_lparen();
      negated = true;
    }
    LiftedAtom atom = parse_atom(p, params);
    p.expect_rparen();
    if (negated) p.expect_rparen();
    if (is_effect) {
      (negated ? schema.del_effects : schema.add_effects).push_back(std::move(atom));
    } else {
      (negated ? schema.precond_neg : schema.precond_pos).push_back(std::move(atom));
    }
  }

  LiftedAtom parse_atom(Parser& p, const std::unordered_map<std::string, uint32_t>& params) {
    const Token at = p.cur();
    const std::string pred = p.expect_symbol("predicate name");
    auto pit = model_.predicate_index.find(pred);
    if (pit == model_.predicate_index.end())
      throw ParseError("undeclared predicate '" + pred + "'", at.line, at.column);
    LiftedAtom atom{pit->second, {}};
    while (!p.at_rparen()) {
      const Token targ = p.cur();
      const std::string term = p.expect_symbol("atom argument");
      if (!term.empty() && term[0] == '?') {
        auto it = params.find(term);
        if (it == params.end())
          throw ParseError("undeclared parameter '" + term + "'", targ.line, targ.column);
        atom.args.push_back({true, it->second});
      } else {
        auto it = constant_index_.find(term);
        if (it == constant_index_.end())
          throw ParseError("undeclared constant '" + term + "'", targ.line, targ.column);
        atom.args.push_back({false, it->second});
      }
    }
    const auto& decl = model_.predicates[pit->second];
    if (atom.args.size() != decl.param_types.size())
      throw ParseError("arity mismatch for predicate '" + pred + "' (expected " +
                           std::to_string(decl.param_types.size()) + ", got " +
                           std::to_string(atom.args.size()) + ")",
                       at.line, at.column);
    return atom;
  }

  void add_type(const std::string& name, std::optional<TypeId> parent) {
    model_.type_index[name] = static_cast<TypeId>(model_.types.size());
    model_.types.push_back({name, parent});
  }

  DomainModel model_;
  std::unordered_map<std::string, ObjectId> constant_index_;
};

}  // namespace

DomainModel parse_domain(std::string_view text) { return DomainBuilder{}.build(text); }

ProblemModel parse_problem(std::string_view text, const DomainModel& domain) {
  Parser p(text);
  ProblemModel model;
  // Constants occupy the first object ids.
  model.objects = domain.constants;
  std::unordered_map<std::string, ObjectId> object_index;
  for (ObjectId i = 0; i < model.objects.size(); ++i) object_index[model.objects[i].name] = i;

  p.expect_lparen();
  p.expect_keyword("define");
  p.expect_lparen();
  p.expect_keyword("problem");
  model.name = p.expect_symbol("problem name");
  p.expect_rparen();
  p.expect_lparen();
  p.expect_keyword(":domain");
  model.domain_name = p.expect_symbol("domain name");
  if (model.domain_name != domain.name) p.fail("problem references a different domain");
  p.expect_rparen();

  const auto parse_ground_atom = [&](Parser& pp) {
    const Token at = pp.cur();
    const std::string pred = pp.expect_symbol("predicate name");
    auto pit = domain.predicate_index.find(pred);
    if (pit == domain.predicate_index.end())
      throw ParseError("undeclared predicate '" + pred + "'", at.line, at.column);
    ProblemModel::GroundAtomText atom{pit->second, {}};
    while (!pp.at_rparen()) {
      const Token targ = pp.cur();
      const std::string obj = pp.expect_symbol("object name");
      auto oit = object_index.find(obj);
      if (oit == object_index.end())
        throw ParseError("undeclared object '" + obj + "'", targ.line, targ.column);
      atom.args.push_back(oit->second);
    }
    pp.expect_rparen();
    const auto& decl = domain.predicates[pit->second];
    if (atom.args.size() != decl.param_types.size())
      throw ParseError("arity mismatch for predicate '" + pred + "'", at.line, at.column);
    for (size_t i = 0; i < atom.args.size(); ++i) {
      if (!domain.is_subtype(model.objects[atom.args[i]].type, decl.param_types[i]))
        throw ParseError("argument type mismatch for predicate '" + pred + "'", at.line,
                         at.column);
    }
    return atom;
  };

  while (p.at_lparen()) {
    p.shift();
    const std::string section = p.expect_symbol("section keyword");
    if (section == ":objects") {
      const Token at = p.cur();
      TypedNames list = parse_typed_list(p, "object name");
      p.expect_rparen();
      for (const auto& [name, type] : list.entries) {
        auto it = domain.type_index.find(type);
        if (it == domain.type_index.end())
          throw ParseError("undeclared type '" + type + "'", at.line, at.column);
        if (object_index.count(name))
          throw ParseError("duplicate object '" + name + "'", at.line, at.column);
        object_index[name] = static_cast<ObjectId>(model.objects.size());
        model.objects.push_back({name, it->second});
      }
    } else if (section == ":init") {
      while (p.at_lparen()) {
        p.shift();
        model.init.push_back(parse_ground_atom(p));
      }
      p.expect_rparen();
    } else if (section == ":goal") {
      p.expect_lparen();
      if (p.at_symbol("and")) {
        p.shift();
        while (p.at_lparen()) {
          p.shift();
          model.goal.push_back(parse_ground_atom(p));
        }
        p.expect_rparen();
      } else {
        model.goal.push_back(parse_ground_atom(p));
      }
      p.expect_rparen();
    } else {
      p.fail("unsupported section '" + section + "'");
    }
  }
  p.expect_rparen();
  return model;
}

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

DomainModel parse_domain_file(const std::string& path) { return parse_domain(read_file(path)); }

ProblemModel parse_problem_file(const std::string& path, const DomainModel& domain) {
  return parse_problem(read_file(path), domain);
}

}  // namespace tampkit::symbolic

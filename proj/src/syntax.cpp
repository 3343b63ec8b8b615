#include "lampar/syntax.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace lampar {

namespace {

enum class Tok {
  Ident, Number, RowLit, ChanOut, ChanIn,
  LParen, RParen, LAngle, RAngle, LBrack, RBrack, LBrace, RBrace,
  Comma, Dot, Colon, Semi, Tilde, Lambda, Bar, BarBar, Arrow, Conj,
  KwNu, KwIf, KwThen, KwElse, KwEfq, KwBot, KwTop,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }
  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  [[noreturn]] void error(size_t at, const std::string& msg) {
    throw ParseError({span(at, at + 1), msg});
  }

  SourceSpan span(size_t b, size_t e) const {
    SourceSpan s{b, e, 1, 1};
    for (size_t i = 0; i < b && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++s.line;
        s.col = 1;
      } else {
        ++s.col;
      }
    }
    return s;
  }

  void push(Tok kind, size_t b, size_t e) {
    tokens_.push_back({kind, src_.substr(b, e - b), span(b, e)});
  }

  void tokenize() {
    size_t i = 0;
    const size_t n = src_.size();
    while (i < n) {
      char c = src_[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++i;
        continue;
      }
      if (c == '-' && i + 1 < n && src_[i + 1] == '-') {
        while (i < n && src_[i] != '\n') ++i;
        continue;
      }
      if (c == '-' && i + 1 < n && src_[i + 1] == '>') {
        push(Tok::Arrow, i, i + 2);
        i += 2;
        continue;
      }
      if ((c == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src_[i + 1]))) ||
          std::isdigit(static_cast<unsigned char>(c))) {
        size_t b = i;
        if (c == '-') ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        if (i < n && src_[i] == '/' && i + 1 < n &&
            std::isdigit(static_cast<unsigned char>(src_[i + 1]))) {
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        }
        push(Tok::Number, b, i);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t b = i;
        while (i < n && (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_' ||
                         src_[i] == '\''))
          ++i;
        std::string word = src_.substr(b, i - b);
        // row literal: I<digits>(<digits>) with no spaces
        if (word.size() > 1 && word[0] == 'I' &&
            word.find_first_not_of("0123456789", 1) == std::string::npos && i < n &&
            src_[i] == '(') {
          size_t j = i + 1, digits = 0;
          while (j < n && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j, ++digits;
          if (digits > 0 && j < n && src_[j] == ')') {
            push(Tok::RowLit, b, j + 1);
            i = j + 1;
            continue;
          }
        }
        if (i < n && (src_[i] == '!' || src_[i] == '?')) {
          push(src_[i] == '!' ? Tok::ChanOut : Tok::ChanIn, b, i + 1);
          ++i;
          continue;
        }
        Tok kind = Tok::Ident;
        if (word == "nu") kind = Tok::KwNu;
        else if (word == "if") kind = Tok::KwIf;
        else if (word == "then") kind = Tok::KwThen;
        else if (word == "else") kind = Tok::KwElse;
        else if (word == "efq") kind = Tok::KwEfq;
        else if (word == "Bot") kind = Tok::KwBot;
        else if (word == "Top") kind = Tok::KwTop;
        push(kind, b, i);
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, i, i + 1); ++i; continue;
        case ')': push(Tok::RParen, i, i + 1); ++i; continue;
        case '<': push(Tok::LAngle, i, i + 1); ++i; continue;
        case '>': push(Tok::RAngle, i, i + 1); ++i; continue;
        case '[': push(Tok::LBrack, i, i + 1); ++i; continue;
        case ']': push(Tok::RBrack, i, i + 1); ++i; continue;
        case '{': push(Tok::LBrace, i, i + 1); ++i; continue;
        case '}': push(Tok::RBrace, i, i + 1); ++i; continue;
        case ',': push(Tok::Comma, i, i + 1); ++i; continue;
        case '.': push(Tok::Dot, i, i + 1); ++i; continue;
        case ':': push(Tok::Colon, i, i + 1); ++i; continue;
        case ';': push(Tok::Semi, i, i + 1); ++i; continue;
        case '~': push(Tok::Tilde, i, i + 1); ++i; continue;
        case '\\':
          if (i + 1 < n && src_[i + 1] == '/') error(i, "'\\/' is only used in printed schemas");
          push(Tok::Lambda, i, i + 1);
          ++i;
          continue;
        case '/':
          if (i + 1 < n && src_[i + 1] == '\\') {
            push(Tok::Conj, i, i + 2);
            i += 2;
            continue;
          }
          error(i, "stray '/'");
        case '|':
          if (i + 1 < n && src_[i + 1] == '|') {
            push(Tok::BarBar, i, i + 2);
            i += 2;
            continue;
          }
          push(Tok::Bar, i, i + 1);
          ++i;
          continue;
        default:
          error(i, std::string("unexpected character '") + c + "'");
      }
    }
    tokens_.push_back({Tok::End, "", span(n, n)});
  }

  const std::string& src_;
  std::vector<Token> tokens_;
};

struct NuScope {
  std::string chan;
  InstancePtr instance;
  int process = 0;  // 1-based index of the process being elaborated
};

class Parser {
 public:
  Parser(const std::string& src, const Registry& reg) : lexer_(src), reg_(reg) {}

  ProgramParse parse_program() {
    TermPtr t = parse_par_or_nu(nullptr);
    expect(Tok::End, "trailing input after the program");
    return {t, frees_};
  }

  FormulaPtr parse_formula_only() {
    FormulaPtr f = parse_type();
    expect(Tok::End, "trailing input after the type");
    return f;
  }

 private:
  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < lexer_.tokens().size() ? lexer_.tokens()[i] : lexer_.tokens().back();
  }
  Token next() { return lexer_.tokens()[pos_ < lexer_.tokens().size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) throw ParseError({peek().span, "expected " + what});
    return next();
  }

  [[noreturn]] void error_at(const SourceSpan& span, const std::string& msg) {
    throw ParseError({span, msg});
  }

  // --- types ---

  FormulaPtr parse_type() {
    FormulaPtr left = parse_conj_type();
    if (at(Tok::Arrow)) {
      next();
      return Formula::arrow(left, parse_type());
    }
    return left;
  }

  FormulaPtr parse_conj_type() {
    FormulaPtr left = parse_atom_type();
    if (at(Tok::Conj)) {
      next();
      return Formula::conj(left, parse_conj_type());
    }
    return left;
  }

  FormulaPtr parse_atom_type() {
    if (at(Tok::KwBot)) { next(); return Formula::bottom(); }
    if (at(Tok::KwTop)) { next(); return Formula::top(); }
    if (at(Tok::Ident)) return Formula::atom(next().text);
    if (at(Tok::LParen)) {
      next();
      FormulaPtr f = parse_type();
      expect(Tok::RParen, "')' closing the type");
      return f;
    }
    throw ParseError({peek().span, "expected a type"});
  }

  // --- programs ---

  TermPtr parse_par_or_nu(const FormulaPtr& want) {
    if (at(Tok::KwNu)) return parse_nu(want);
    TermPtr first = parse_term(want);
    if (!at(Tok::BarBar)) return first;
    std::vector<TermPtr> parts{first};
    while (at(Tok::BarBar)) {
      next();
      parts.push_back(parse_term(first->type));
    }
    return mk_par(std::move(parts));
  }

  TermPtr parse_nu(const FormulaPtr& want) {
    Token kw = expect(Tok::KwNu, "'nu'");
    std::string chan = expect(Tok::Ident, "channel name").text;
    expect(Tok::Colon, "':' before the schema header");
    expect(Tok::LBrace, "'{' opening the schema header");
    std::vector<AxiomSchema::Outlinks> outlinks;
    std::vector<FormulaPtr> assignment;
    for (int expected = 1;; ++expected) {
      Token num = expect(Tok::Number, "disjunct index");
      if (num.text != std::to_string(expected))
        error_at(num.span, "disjunct indices must run 1..m in order; expected " +
                               std::to_string(expected));
      expect(Tok::Colon, "':' after the disjunct index");
      assignment.push_back(parse_type());
      expect(Tok::Tilde, "'~' before the outlink list");
      expect(Tok::LBrack, "'[' opening the outlink list");
      std::vector<int> links;
      if (!at(Tok::RBrack)) {
        for (;;) {
          Token k = expect(Tok::Number, "outlink index");
          links.push_back(std::stoi(k.text));
          if (!at(Tok::Comma)) break;
          next();
        }
      }
      expect(Tok::RBrack, "']' closing the outlink list");
      outlinks.push_back(links.empty() ? AxiomSchema::Outlinks{} : AxiomSchema::Outlinks{links});
      if (at(Tok::Semi)) { next(); continue; }
      break;
    }
    expect(Tok::RBrace, "'}' closing the schema header");
    expect(Tok::Dot, "'.' after the schema header");

    InstancePtr inst;
    try {
      inst = instantiate(AxiomSchema(std::move(outlinks)), std::move(assignment));
    } catch (const std::exception& e) {
      error_at(kw.span, e.what());
    }

    nu_stack_.push_back({chan, inst, 1});
    std::vector<TermPtr> processes;
    FormulaPtr btype = want;
    for (int i = 1; i <= inst->size(); ++i) {
      nu_stack_.back().process = i;
      std::vector<TermPtr> threads;
      threads.push_back(parse_term(btype));
      if (!btype) btype = threads.front()->type;
      while (at(Tok::Bar)) {
        next();
        threads.push_back(parse_term(btype));
      }
      processes.push_back(mk_par(std::move(threads)));
      if (i < inst->size()) {
        if (!at(Tok::BarBar))
          error_at(peek().span, "expected '||' before process " + std::to_string(i + 1) + " of " +
                                    std::to_string(inst->size()));
        next();
      }
    }
    nu_stack_.pop_back();
    if (at(Tok::BarBar))
      error_at(peek().span, "more processes than the schema has disjuncts");
    TermPtr out;
    try {
      out = mk_nu(chan, inst, std::move(processes));
    } catch (const TermError& e) {
      error_at(kw.span, e.what());
    }
    return with_span(out, kw.span);
  }

  TermPtr parse_term(const FormulaPtr& want) {
    if (at(Tok::KwIf)) {
      Token kw = next();
      TermPtr cond = parse_term(Formula::atom("Bool"));
      expect(Tok::KwThen, "'then'");
      TermPtr thenb = parse_term(want);
      expect(Tok::KwElse, "'else'");
      TermPtr elseb = parse_term(thenb->type);
      return with_span(mk_if(cond, thenb, elseb), kw.span);
    }
    if (at(Tok::KwNu)) {
      // Accepted here so the typechecker can report the 1-depth violation.
      return parse_nu(want);
    }
    // A lone unknown identifier adopts the expected type.
    if (want && at(Tok::Ident) && is_unknown(peek().text) && !starts_primary(1) &&
        !proj_follows(1)) {
      Token name = next();
      frees_[name.text] = want;
      return with_span(mk_var(name.text, want), name.span);
    }
    // application chain
    Token head_tok = peek();
    TermPtr acc = parse_postfix(nullptr);
    while (starts_primary(0)) {
      if (acc->type->kind() != Formula::Kind::Arrow)
        error_at(head_tok.span, "applying a term of non-arrow type " +
                                    formula_to_string(acc->type));
      TermPtr arg = parse_postfix(acc->type->left());
      acc = mk_app(acc, arg);
    }
    return check_want(acc, want, head_tok.span);
  }

  bool starts_primary(int ahead) const {
    switch (peek(ahead).kind) {
      case Tok::Ident: case Tok::Number: case Tok::RowLit: case Tok::ChanOut:
      case Tok::ChanIn: case Tok::LParen: case Tok::LAngle: case Tok::Lambda:
      case Tok::KwEfq:
        return true;
      default:
        return false;
    }
  }

  bool proj_follows(int ahead) const {
    return peek(ahead).kind == Tok::Dot && peek(ahead + 1).kind == Tok::Number &&
           (peek(ahead + 1).text == "0" || peek(ahead + 1).text == "1");
  }

  bool is_unknown(const std::string& name) const {
    for (const auto& [n, _] : bound_)
      if (n == name) return false;
    return reg_.lookup(name) == nullptr && !frees_.count(name);
  }

  // True when a projection applies to the primary that starts at the current
  // token, so the chain's expected type does not describe the primary itself.
  bool proj_follows_primary() const {
    Tok open = peek().kind;
    if (open == Tok::LParen || open == Tok::LAngle) {
      Tok close = open == Tok::LParen ? Tok::RParen : Tok::RAngle;
      int depth = 0;
      size_t i = pos_;
      const auto& toks = lexer_.tokens();
      for (; i < toks.size(); ++i) {
        if (toks[i].kind == open) ++depth;
        else if (toks[i].kind == close && --depth == 0) break;
      }
      if (i + 2 >= toks.size()) return false;
      return toks[i + 1].kind == Tok::Dot && toks[i + 2].kind == Tok::Number &&
             (toks[i + 2].text == "0" || toks[i + 2].text == "1");
    }
    return proj_follows(1);
  }

  TermPtr parse_postfix(const FormulaPtr& want) {
    Token first = peek();
    // An unknown identifier standing alone in a known position adopts it.
    if (want && first.kind == Tok::Ident && is_unknown(first.text) && !proj_follows(1)) {
      next();
      frees_[first.text] = want;
      return with_span(mk_var(first.text, want), first.span);
    }
    TermPtr t = parse_primary(proj_follows_primary() ? nullptr : want);
    while (proj_follows(0)) {
      next();
      Token idx = next();
      if (t->type->kind() != Formula::Kind::Conj)
        error_at(idx.span,
                 "projection of a non-conjunction term of type " + formula_to_string(t->type));
      t = mk_proj(idx.text == "1" ? 1 : 0, t);
    }
    return check_want(t, want, first.span);
  }

  TermPtr check_want(const TermPtr& t, const FormulaPtr& want, const SourceSpan& span) {
    if (want && !formula_equal(t->type, want))
      error_at(span, "expected a term of type " + formula_to_string(want) + ", found " +
                         formula_to_string(t->type));
    return t;
  }

  TermPtr parse_primary(const FormulaPtr& want) {
    Token tok = peek();
    switch (tok.kind) {
      case Tok::LParen: {
        // annotated free variable: (x : T)
        if (peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon) {
          next();
          Token name = next();
          next();
          FormulaPtr ty = parse_type();
          expect(Tok::RParen, "')' closing the annotation");
          return with_span(make_var(name, ty), tok.span);
        }
        next();
        TermPtr t = parse_term(want);
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Lambda: {
        next();
        Token name = expect(Tok::Ident, "bound variable name");
        expect(Tok::Colon, "':' with the binder type");
        FormulaPtr ty = parse_type();
        expect(Tok::Dot, "'.' before the body");
        bound_.push_back({name.text, ty});
        TermPtr body = parse_term(nullptr);
        bound_.pop_back();
        return with_span(mk_lam(name.text, ty, body), tok.span);
      }
      case Tok::LAngle: {
        next();
        TermPtr l = parse_term(nullptr);
        expect(Tok::Comma, "',' between the pair components");
        TermPtr r = parse_term(nullptr);
        expect(Tok::RAngle, "'>' closing the pair");
        return with_span(mk_pair(l, r), tok.span);
      }
      case Tok::KwEfq: {
        next();
        expect(Tok::LBrack, "'[' before the efq target");
        Token p = expect(Tok::Ident, "atomic efq target");
        expect(Tok::RBrack, "']' after the efq target");
        TermPtr of = parse_postfix(Formula::bottom());
        return with_span(mk_efq(Formula::atom(p.text), of), tok.span);
      }
      case Tok::ChanOut:
      case Tok::ChanIn: {
        next();
        std::string name = tok.text.substr(0, tok.text.size() - 1);
        for (auto it = nu_stack_.rbegin(); it != nu_stack_.rend(); ++it) {
          if (it->chan == name) {
            Polarity pol = tok.kind == Tok::ChanOut ? Polarity::Out : Polarity::In;
            return with_span(mk_chan(name, pol, it->process, it->instance), tok.span);
          }
        }
        error_at(tok.span, "channel " + name + " is not bound by an enclosing nu");
      }
      case Tok::RowLit: {
        next();
        auto open = tok.text.find('(');
        RowValue row;
        row.source = std::stoi(tok.text.substr(1, open - 1));
        row.stage = std::stoi(tok.text.substr(open + 1, tok.text.size() - open - 2));
        return with_span(mk_row(row, reg_.row_type()), tok.span);
      }
      case Tok::Number: {
        next();
        if (!reg_.numeral_type())
          error_at(tok.span, "numeric literals need a prims profile");
        return with_span(mk_rat(Rational::parse(tok.text), reg_.numeral_type()), tok.span);
      }
      case Tok::Ident: {
        next();
        return with_span(make_var(tok, want), tok.span);
      }
      default:
        error_at(tok.span, "expected a term");
    }
  }

  TermPtr make_var(const Token& name, const FormulaPtr& want) {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->first == name.text) return mk_var(name.text, it->second);
    }
    if (const ConstInfo* info = reg_.lookup(name.text)) return mk_const(name.text, info->type);
    auto adopted = frees_.find(name.text);
    if (adopted != frees_.end()) {
      if (want && !formula_equal(want, adopted->second))
        error_at(name.span, "free variable " + name.text + " already used at type " +
                                formula_to_string(adopted->second));
      return mk_var(name.text, adopted->second);
    }
    if (want) {
      frees_[name.text] = want;
      return mk_var(name.text, want);
    }
    error_at(name.span, "cannot determine the type of free variable " + name.text +
                            "; annotate it as (" + name.text + " : T)");
  }

  Lexer lexer_;
  const Registry& reg_;
  size_t pos_ = 0;
  std::vector<std::pair<std::string, FormulaPtr>> bound_;
  std::vector<NuScope> nu_stack_;
  std::map<std::string, FormulaPtr> frees_;
};

}  // namespace

ProgramParse parse_program(const std::string& text, const Registry& reg) {
  Parser p(text, reg);
  return p.parse_program();
}

FormulaPtr parse_formula(const std::string& text) {
  Registry none;
  Parser p(text, none);
  return p.parse_formula_only();
}

// --- pretty printing -----------------------------------------------------

namespace {

// precedence: 1 if/lambda (right-open), 2 application, 3 postfix, 4 atom
void pp(const TermPtr& t, int prec, std::set<std::string>& bound, std::string& out);

void pp_paren(const TermPtr& t, int prec, int mine, std::set<std::string>& bound,
              std::string& out) {
  if (mine < prec) {
    out += "(";
    pp(t, 1, bound, out);
    out += ")";
  } else {
    pp(t, prec, bound, out);
  }
}

void pp(const TermPtr& t, int prec, std::set<std::string>& bound, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (bound.count(t->name)) {
        out += t->name;
      } else {
        out += "(" + t->name + " : " + formula_to_string(t->type) + ")";
      }
      return;
    case Term::Kind::Chan:
      out += t->name;
      out += t->polarity == Polarity::Out ? "!" : "?";
      return;
    case Term::Kind::Const:
      if (std::holds_alternative<Rational>(t->value)) {
        out += std::get<Rational>(t->value).to_string();
      } else if (std::holds_alternative<RowValue>(t->value)) {
        out += std::get<RowValue>(t->value).tag();
      } else {
        out += t->name;
      }
      return;
    case Term::Kind::Hole:
      out += "[]";
      return;
    case Term::Kind::Lam: {
      if (1 < prec) out += "(";
      out += "\\" + t->name + ":" + formula_to_string(t->binder_type) + ". ";
      bool fresh = bound.insert(t->name).second;
      pp(t->child0, 1, bound, out);
      if (fresh) bound.erase(t->name);
      if (1 < prec) out += ")";
      return;
    }
    case Term::Kind::If: {
      if (1 < prec) out += "(";
      out += "if ";
      pp(t->child0, 1, bound, out);
      out += " then ";
      pp(t->child1, 1, bound, out);
      out += " else ";
      pp(t->child2, 1, bound, out);
      if (1 < prec) out += ")";
      return;
    }
    case Term::Kind::App: {
      if (2 < prec) out += "(";
      pp_paren(t->child0, 2, 2, bound, out);
      out += " ";
      pp_paren(t->child1, 3, 3, bound, out);
      if (2 < prec) out += ")";
      return;
    }
    case Term::Kind::Efq: {
      if (2 < prec) out += "(";
      out += "efq[" + formula_to_string(t->type) + "] ";
      pp_paren(t->child0, 3, 3, bound, out);
      if (2 < prec) out += ")";
      return;
    }
    case Term::Kind::Pair:
      out += "<";
      pp(t->child0, 1, bound, out);
      out += ", ";
      pp(t->child1, 1, bound, out);
      out += ">";
      return;
    case Term::Kind::Proj:
      pp_paren(t->child0, 3, 3, bound, out);
      out += t->index == 1 ? ".1" : ".0";
      return;
    case Term::Kind::Par: {
      // top-level parallel composition
      for (size_t i = 0; i < t->parts.size(); ++i) {
        if (i) out += " || ";
        pp(t->parts[i], 1, bound, out);
      }
      return;
    }
    case Term::Kind::Nu: {
      if (1 < prec) out += "(";
      out += "nu " + t->name + " : " + schema_header(*t->instance) + " . ";
      for (size_t i = 0; i < t->parts.size(); ++i) {
        if (i) out += " || ";
        const auto& process = t->parts[i];
        for (size_t j = 0; j < process->parts.size(); ++j) {
          if (j) out += " | ";
          pp(process->parts[j], 1, bound, out);
        }
      }
      if (1 < prec) out += ")";
      return;
    }
  }
}

}  // namespace

std::string schema_header(const AxiomInstance& inst) {
  std::string out = "{";
  for (int i = 1; i <= inst.size(); ++i) {
    if (i > 1) out += "; ";
    out += std::to_string(i) + ": " + formula_to_string(inst.assigned(i)) + " ~ [";
    const auto& links = inst.schema().outlinks_of(i);
    if (links.has_value()) {
      for (size_t j = 0; j < links->size(); ++j) {
        if (j) out += ", ";
        out += std::to_string((*links)[j]);
      }
    }
    out += "]";
  }
  out += "}";
  return out;
}

std::string pretty(const TermPtr& t) {
  std::string out;
  std::set<std::string> bound;
  pp(t, 1, bound, out);
  return out;
}

// --- topology files --------------------------------------------------------

TopologyParse parse_topology(const std::string& text) {
  TopologyParse out;
  out.graph.node_count = 0;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_nodes = false;
  auto fail = [&](const std::string& msg) -> void {
    SourceSpan s;
    s.line = lineno;
    s.col = 1;
    throw ParseError({s, msg});
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "nodes") {
      if (have_nodes) fail("duplicate nodes line");
      if (!(ls >> out.graph.node_count) || out.graph.node_count < 1)
        fail("nodes needs a positive count");
      have_nodes = true;
    } else if (word == "edge") {
      if (!have_nodes) fail("edge before the nodes line");
      int s, d;
      if (!(ls >> s >> d)) fail("edge needs two node numbers");
      if (s < 1 || s > out.graph.node_count || d < 1 || d > out.graph.node_count)
        fail("edge endpoint outside 1.." + std::to_string(out.graph.node_count));
      out.graph.edges.insert({s, d});
    } else {
      fail("unknown directive '" + word + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing input '" + rest + "'");
  }
  if (!have_nodes) {
    SourceSpan s;
    s.line = lineno;
    s.col = 1;
    throw ParseError({s, "topology file needs a nodes line"});
  }
  for (int v = 1; v <= out.graph.node_count; ++v) {
    if (!out.graph.edges.count({v, v})) {
      out.graph.edges.insert({v, v});
      out.notices.push_back("inserted missing self-loop at node " + std::to_string(v));
    }
  }
  return out;
}

std::string render_diagnostic(const Diagnostic& d, const std::string& filename) {
  std::string out = filename;
  if (d.span.line > 0)
    out += ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.col);
  out += ": error: " + d.message;
  return out;
}

}  // namespace lampar

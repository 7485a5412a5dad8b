#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collage/diagram.hpp"
#include "collage/present.hpp"
#include "collage/sig.hpp"

// Parser and printer for the `.collage` textual format: theory blocks
// (monoidal / two / bimodular / functorbox), model blocks, interpretation
// blocks, diagram expressions and equations.

namespace collage {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

namespace detail {

struct Token {
  enum Kind { Ident, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek(std::size_t n = 0) {
    while (buffer_.size() <= n) {
      buffer_.push_back(tok_);
      advance();
    }
    return buffer_[n];
  }
  Token take() {
    if (!buffer_.empty()) {
      Token t = buffer_.front();
      buffer_.erase(buffer_.begin());
      return t;
    }
    Token t = tok_;
    advance();
    return t;
  }

 private:
  std::vector<Token> buffer_;

  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{Token::End, "", line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    tok_.line = line_;
    tok_.col = col_;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_' || src_[pos_] == '\''))
        bump();
      tok_.kind = Token::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '-') {
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        bump();
        bump();
        tok_.kind = Token::Punct;
        tok_.text = "->";
      } else {
        throw ParseError("unexpected character '-'", line_, col_);
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      // Model object/morphism names may be numeric ("0", "1", ...).
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_' || src_[pos_] == '\''))
        bump();
      tok_.kind = Token::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '*') {
      // `*` names the single object of delooping models.
      bump();
      tok_.kind = Token::Ident;
      tok_.text = "*";
    } else if (std::string("{}():;,|=@").find(c) != std::string::npos) {
      bump();
      tok_.kind = Token::Punct;
      tok_.text = std::string(1, c);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void bump() {
    ++pos_;
    ++col_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// Diagram expression AST. `;` is vertical composition and binds loosest; `|`
// composes horizontally (whiskers are identity diagrams on wire lists).
struct Expr {
  enum Kind { Seq, Tensor, Id, Names } kind = Names;
  std::vector<Expr> children;
  bool at = false;                  // Id: id(@Z) form
  std::string cell;                 // Id with at
  std::vector<std::string> names;   // Id path or Names list
  int line = 1, col = 1;
};

}  // namespace detail

struct RawModel {
  std::string name;
  std::vector<std::string> objects;
  std::string unit;
  struct Hom {
    std::string src, tgt;
    std::vector<std::string> morphisms;
  };
  std::vector<Hom> homs;
  std::map<std::string, std::string> identities;                        // object -> morphism
  std::vector<std::pair<std::pair<std::string, std::string>, std::string>> compose;  // f;g = h
  std::vector<std::pair<std::pair<std::string, std::string>, std::string>> tensor;   // objects or morphisms
  int line = 1, col = 1;
};

struct InterpretationDecl {
  std::string name;
  std::string theory;
  std::string model;
  std::map<std::string, std::string> objects;
  std::map<std::string, std::string> edges;
  int line = 1, col = 1;
};

struct TheoryDecl {
  enum Kind { Monoidal, Two, Bimodular, FunctorBox } kind = Monoidal;
  std::string name;

  Polygraph poly;
  TwoGraph two;
  BimodularGraph bimod;
  FunctorBoxSignature fbox;

  TwoGraph graph;  // the graph diagrams are elaborated over
  std::optional<FunctorBoxPresentation> fbox_presentation;
  std::optional<InternalPresentation> internal_presentation;  // Monoidal only

  EquationSet equations;
  std::map<std::string, SlicedDiagram> diagrams;
  std::map<std::string, SlicedDiagram> internal_diagrams;  // over the internal presentation

  std::vector<Diagnostic> diagnostics;  // validation + elaboration findings
};

struct CollageFile {
  std::vector<TheoryDecl> theories;
  std::vector<RawModel> models;
  std::vector<InterpretationDecl> interpretations;

  const TheoryDecl* theory(std::string_view n) const {
    for (const auto& t : theories)
      if (t.name == n) return &t;
    return nullptr;
  }
  const RawModel* model(std::string_view n) const {
    for (const auto& m : models)
      if (m.name == n) return &m;
    return nullptr;
  }
  const InterpretationDecl* interpretation(std::string_view n) const {
    for (const auto& i : interpretations)
      if (i.name == n) return &i;
    return nullptr;
  }
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  CollageFile file() {
    CollageFile out;
    while (lex_.peek().kind != Token::End) {
      Token t = expect_ident("block keyword");
      if (t.text == "model") {
        out.models.push_back(model_block());
      } else if (t.text == "interpretation") {
        out.interpretations.push_back(interpretation_block());
      } else {
        out.theories.push_back(theory_block(t));
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& t) {
    throw ParseError(msg, t.line, t.col);
  }

  Token expect_ident(const std::string& what) {
    Token t = lex_.take();
    if (t.kind != Token::Ident) fail("expected " + what, t);
    return t;
  }
  Token expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.kind != Token::Punct || t.text != p) fail("expected '" + p + "'", t);
    return t;
  }
  bool peek_punct(const std::string& p) {
    return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
  }
  bool peek_ident(const std::string& w) {
    return lex_.peek().kind == Token::Ident && lex_.peek().text == w;
  }
  bool accept_ident(const std::string& w) {
    if (!peek_ident(w)) return false;
    lex_.take();
    return true;
  }

  std::vector<std::string> name_list(bool allow_empty) {
    std::vector<std::string> out;
    if (allow_empty && lex_.peek().kind != Token::Ident) return out;
    out.push_back(expect_ident("identifier").text);
    while (peek_punct(",")) {
      lex_.take();
      out.push_back(expect_ident("identifier").text);
    }
    return out;
  }

  // `dom -> cod ;` with either side possibly empty.
  std::pair<std::vector<std::string>, std::vector<std::string>> boundary() {
    std::vector<std::string> dom = name_list(true);
    expect_punct("->");
    std::vector<std::string> cod = name_list(true);
    expect_punct(";");
    return {std::move(dom), std::move(cod)};
  }

  Expr expr() {
    Expr e;
    e.kind = Expr::Seq;
    e.line = lex_.peek().line;
    e.col = lex_.peek().col;
    e.children.push_back(tensor_expr());
    while (peek_punct(";") && !ends_statement()) {
      lex_.take();
      e.children.push_back(tensor_expr());
    }
    if (e.children.size() == 1) return e.children[0];
    return e;
  }

  // Whether the ';' under the cursor terminates the statement rather than
  // separating two vertical factors: it does when followed by '}' or by a
  // declaration keyword (which are therefore reserved in expressions after
  // ';'). 'id' stays an expression keyword when followed by '('.
  bool ends_statement() {
    const Token& next = lex_.peek(1);
    if (next.kind == Token::Punct) return next.text == "}";
    if (next.kind == Token::End) return true;
    static const std::set<std::string> keywords{
        "equation", "diagram", "internal", "edge",  "objects", "zero",
        "one",      "two",     "left",     "right", "center",  "central",
        "plain",    "box",     "inbox",    "outbox"};
    if (keywords.count(next.text)) return true;
    if (next.text == "id")
      return !(lex_.peek(2).kind == Token::Punct && lex_.peek(2).text == "(");
    return false;
  }

  Expr tensor_expr() {
    Expr e;
    e.kind = Expr::Tensor;
    e.line = lex_.peek().line;
    e.col = lex_.peek().col;
    e.children.push_back(part());
    while (peek_punct("|")) {
      lex_.take();
      e.children.push_back(part());
    }
    if (e.children.size() == 1) return e.children[0];
    return e;
  }

  Expr part() {
    Token t = lex_.peek();
    Expr e;
    e.line = t.line;
    e.col = t.col;
    if (t.kind == Token::Punct && t.text == "(") {
      lex_.take();
      e = expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == Token::Ident && t.text == "id") {
      lex_.take();
      expect_punct("(");
      e.kind = Expr::Id;
      if (peek_punct("@")) {
        lex_.take();
        e.at = true;
        e.cell = expect_ident("zero-cell").text;
      } else {
        e.names = name_list(false);
      }
      expect_punct(")");
      return e;
    }
    if (t.kind != Token::Ident) fail("expected a diagram expression", t);
    e.kind = Expr::Names;
    e.names = name_list(false);
    return e;
  }

  void object_section(std::vector<std::string>& into) {
    expect_punct(":");
    auto names = name_list(true);
    into.insert(into.end(), names.begin(), names.end());
    expect_punct(";");
  }

  struct PendingExpr {
    enum What { Diagram, InternalDiagram, EquationLhs } what;
    std::string name;
    Expr lhs, rhs;  // rhs used for equations
  };

  TheoryDecl theory_block(Token first) {
    TheoryDecl d;
    std::string head = first.text;
    if (head == "monoidal") {
      d.kind = TheoryDecl::Monoidal;
    } else if (head == "two") {
      d.kind = TheoryDecl::Two;
    } else if (head == "bimodular") {
      d.kind = TheoryDecl::Bimodular;
    } else if (head == "functorbox") {
      d.kind = TheoryDecl::FunctorBox;
    } else {
      fail("unknown block kind '" + head + "'", first);
    }
    Token kw = expect_ident("'theory'");
    if (kw.text != "theory") fail("expected 'theory'", kw);
    d.name = expect_ident("theory name").text;
    d.poly.name = d.two.name = d.bimod.name = d.fbox.name = d.name;
    expect_punct("{");

    std::vector<PendingExpr> pending;
    while (!peek_punct("}")) {
      Token t = expect_ident("declaration");
      if (t.text == "objects" && d.kind == TheoryDecl::Monoidal) {
        object_section(d.poly.objects);
      } else if (t.text == "edge" && d.kind == TheoryDecl::Monoidal) {
        Edge e;
        e.name = expect_ident("edge name").text;
        expect_punct(":");
        std::tie(e.dom, e.cod) = boundary();
        d.poly.edges.push_back(std::move(e));
      } else if (t.text == "zero" && d.kind == TheoryDecl::Two) {
        if (expect_ident("'cells'").text != "cells") fail("expected 'cells'", t);
        object_section(d.two.zero_cells);
      } else if (t.text == "one" && d.kind == TheoryDecl::Two) {
        if (expect_ident("'cell'").text != "cell") fail("expected 'cell'", t);
        OneGen o;
        o.name = expect_ident("1-cell name").text;
        expect_punct(":");
        o.src = expect_ident("zero-cell").text;
        expect_punct("->");
        o.tgt = expect_ident("zero-cell").text;
        expect_punct(";");
        d.two.one_generators.push_back(std::move(o));
      } else if (t.text == "two" && d.kind == TheoryDecl::Two) {
        if (expect_ident("'cell'").text != "cell") fail("expected 'cell'", t);
        TwoGen g;
        g.name = expect_ident("2-cell name").text;
        expect_punct(":");
        std::tie(g.dom_start, g.dom) = anchored_path();
        expect_punct("->");
        std::tie(g.cod_start, g.cod) = anchored_path();
        expect_punct(";");
        d.two.two_generators.push_back(std::move(g));
      } else if ((t.text == "left" || t.text == "right" || t.text == "center" ||
                  t.text == "central") &&
                 d.kind == TheoryDecl::Bimodular) {
        Token w = expect_ident("'objects' or 'edge'");
        if (w.text == "objects") {
          if (t.text == "left")
            object_section(d.bimod.left_objects);
          else if (t.text == "right")
            object_section(d.bimod.right_objects);
          else
            object_section(d.bimod.center_objects);
        } else if (w.text == "edge") {
          Edge e;
          e.name = expect_ident("edge name").text;
          expect_punct(":");
          std::tie(e.dom, e.cod) = boundary();
          if (t.text == "left")
            d.bimod.left_edges.push_back(std::move(e));
          else if (t.text == "right")
            d.bimod.right_edges.push_back(std::move(e));
          else
            d.bimod.central_edges.push_back(std::move(e));
        } else {
          fail("expected 'objects' or 'edge'", w);
        }
      } else if ((t.text == "plain" || t.text == "box" || t.text == "inbox" ||
                  t.text == "outbox") &&
                 d.kind == TheoryDecl::FunctorBox) {
        Token w = expect_ident("'objects' or 'edge'");
        if (w.text == "objects" && (t.text == "plain" || t.text == "box")) {
          object_section(t.text == "plain" ? d.fbox.plain_objects : d.fbox.box_objects);
        } else if (w.text == "edge") {
          Edge e;
          e.name = expect_ident("edge name").text;
          expect_punct(":");
          std::tie(e.dom, e.cod) = boundary();
          if (t.text == "plain")
            d.fbox.plain_edges.push_back(std::move(e));
          else if (t.text == "box")
            d.fbox.box_edges.push_back(std::move(e));
          else if (t.text == "inbox")
            d.fbox.in_box_edges.push_back(std::move(e));
          else
            d.fbox.out_box_edges.push_back(std::move(e));
        } else {
          fail("expected 'objects' or 'edge'", w);
        }
      } else if (t.text == "equation") {
        PendingExpr p;
        p.what = PendingExpr::EquationLhs;
        p.name = expect_ident("equation name").text;
        expect_punct(":");
        p.lhs = expr();
        expect_punct("=");
        p.rhs = expr();
        expect_punct(";");
        pending.push_back(std::move(p));
      } else if (t.text == "diagram") {
        PendingExpr p;
        p.what = PendingExpr::Diagram;
        p.name = expect_ident("diagram name").text;
        expect_punct(":");
        p.lhs = expr();
        expect_punct(";");
        pending.push_back(std::move(p));
      } else if (t.text == "internal" && d.kind == TheoryDecl::Monoidal) {
        if (expect_ident("'diagram'").text != "diagram") fail("expected 'diagram'", t);
        PendingExpr p;
        p.what = PendingExpr::InternalDiagram;
        p.name = expect_ident("diagram name").text;
        expect_punct(":");
        p.lhs = expr();
        expect_punct(";");
        pending.push_back(std::move(p));
      } else {
        fail("unexpected declaration '" + t.text + "' in " + head + " theory", t);
      }
    }
    expect_punct("}");
    finish_theory(d, pending, first);
    return d;
  }

  std::pair<std::string, std::vector<std::string>> anchored_path() {
    if (peek_punct("@")) {
      lex_.take();
      return {expect_ident("zero-cell").text, {}};
    }
    return {"", name_list(false)};  // start inferred during elaboration
  }

  void finish_theory(TheoryDecl& d, std::vector<PendingExpr>& pending, const Token& at) {
    // Resolve inferred path anchors for two-theories.
    if (d.kind == TheoryDecl::Two) {
      for (auto& g : d.two.two_generators) {
        for (auto side : {std::pair{&g.dom_start, &g.dom}, std::pair{&g.cod_start, &g.cod}}) {
          if (side.first->empty()) {
            if (side.second->empty()) fail("2-cell " + g.name + " path needs an anchor", at);
            const OneGen* o = d.two.one_gen(side.second->front());
            if (!o) fail("unknown 1-cell " + side.second->front() + " in 2-cell " + g.name, at);
            *side.first = o->src;
          }
        }
      }
    }

    // Structural validation first; derived graphs need a sane signature.
    std::vector<Diagnostic> diags;
    switch (d.kind) {
      case TheoryDecl::Monoidal: diags = validate(d.poly); break;
      case TheoryDecl::Two: diags = validate(d.two); break;
      case TheoryDecl::Bimodular: diags = validate(d.bimod); break;
      case TheoryDecl::FunctorBox: diags = validate(d.fbox); break;
    }
    for (const auto& dg : diags) {
      if (dg.invariant == "declared objects")
        throw ParseError("unknown identifier: " + dg.message, at.line, at.col);
    }
    d.diagnostics = diags;
    if (!diags.empty()) return;  // skip elaboration over an invalid signature

    switch (d.kind) {
      case TheoryDecl::Monoidal: {
        d.graph.name = d.name;
        d.graph.zero_cells = {"*"};
        for (const auto& o : d.poly.objects) d.graph.one_generators.push_back({o, "*", "*"});
        for (const auto& e : d.poly.edges)
          d.graph.two_generators.push_back({e.name, "*", e.dom, "*", e.cod});
        d.internal_presentation = syn_internal(d.poly);
        break;
      }
      case TheoryDecl::Two: d.graph = d.two; break;
      case TheoryDecl::Bimodular: d.graph = collage_of(d.bimod).graph; break;
      case TheoryDecl::FunctorBox: {
        d.fbox_presentation = syn_functor_box(d.fbox);
        d.graph = d.fbox_presentation->graph;
        break;
      }
    }

    for (const auto& p : pending) {
      const TwoGraph& g =
          p.what == PendingExpr::InternalDiagram ? d.internal_presentation->graph : d.graph;
      try {
        SlicedDiagram lhs = elaborate(g, p.lhs, d.kind == TheoryDecl::Bimodular ? &d.bimod : nullptr);
        if (p.what == PendingExpr::Diagram) {
          d.diagrams[p.name] = std::move(lhs);
        } else if (p.what == PendingExpr::InternalDiagram) {
          d.internal_diagrams[p.name] = std::move(lhs);
        } else {
          SlicedDiagram rhs =
              elaborate(g, p.rhs, d.kind == TheoryDecl::Bimodular ? &d.bimod : nullptr);
          if (lhs.domain != rhs.domain || codomain(g, lhs) != codomain(g, rhs))
            throw ElabError{"equation sides have different boundaries", "boundary mismatch",
                            p.lhs.line, p.lhs.col};
          d.equations.push_back({p.name, std::move(lhs), std::move(rhs), true, ""});
        }
      } catch (const ElabError& e) {
        d.diagnostics.push_back(
            {e.invariant, p.name,
             e.message + " (line " + std::to_string(e.line) + ", column " +
                 std::to_string(e.col) + ")"});
      }
    }
    std::sort(d.diagnostics.begin(), d.diagnostics.end());
  }

  struct ElabError {
    std::string message;
    std::string invariant;
    int line, col;
  };

  SlicedDiagram elaborate(const TwoGraph& g, const Expr& e, const BimodularGraph* bimod) {
    switch (e.kind) {
      case Expr::Id: {
        if (e.at) {
          if (!g.has_zero_cell(e.cell))
            throw ElabError{"unknown zero-cell " + e.cell, "unknown identifier", e.line, e.col};
          return identity(OneCellPath{e.cell, {}});
        }
        return identity(path_of(g, e.names, e));
      }
      case Expr::Names: {
        if (e.names.size() == 1) {
          if (const TwoGen* t = g.two_gen(e.names[0])) {
            if (g.one_gen(e.names[0]))
              throw ElabError{"ambiguous name " + e.names[0], "ambiguous identifier", e.line,
                              e.col};
            return SlicedDiagram{OneCellPath{t->dom_start, t->dom},
                                 {Layer{{}, t->name, {}}}};
          }
        }
        return identity(path_of(g, e.names, e));
      }
      case Expr::Tensor: {
        SlicedDiagram acc = elaborate(g, e.children[0], bimod);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
          SlicedDiagram next = elaborate(g, e.children[i], bimod);
          try {
            acc = tensor_horizontal(g, acc, next);
          } catch (const DiagramError& err) {
            throw ElabError{err.what(), "boundary mismatch", e.children[i].line,
                            e.children[i].col};
          }
        }
        return acc;
      }
      case Expr::Seq: {
        SlicedDiagram acc = elaborate(g, e.children[0], bimod);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
          SlicedDiagram next = elaborate(g, e.children[i], bimod);
          OneCellPath cod = codomain(g, acc);
          if (cod != next.domain)
            throw compose_error(cod.wires, next.domain.wires, bimod, e.children[i]);
          acc = compose_vertical(g, acc, next);
        }
        return acc;
      }
    }
    throw ElabError{"malformed expression", "syntax", e.line, e.col};
  }

  ElabError compose_error(const std::vector<std::string>& cod,
                          const std::vector<std::string>& dom, const BimodularGraph* bimod,
                          const Expr& at) {
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
      return s.empty() ? std::string("(empty)") : s;
    };
    if (bimod) {
      // Central typing diagnostic when the boundary disagreement involves a
      // central wire (e.g. a lock-state mismatch).
      for (std::size_t i = 0; i < std::min(cod.size(), dom.size()); ++i) {
        if (cod[i] == dom[i]) continue;
        if (bimod->is_center(cod[i]) || bimod->is_center(dom[i]))
          return ElabError{"central wire state mismatch: " + cod[i] + " vs " + dom[i],
                           "central typing", at.line, at.col};
        break;
      }
    }
    return ElabError{"boundary mismatch: [" + join(cod) + "] then [" + join(dom) + "]",
                     "boundary mismatch", at.line, at.col};
  }

  OneCellPath path_of(const TwoGraph& g, const std::vector<std::string>& names, const Expr& e) {
    for (const auto& n : names)
      if (!g.one_gen(n))
        throw ElabError{"unknown 1-cell " + n +
                            (g.two_gen(n) ? " (a 2-generator cannot be a whisker)" : ""),
                        "unknown identifier", e.line, e.col};
    OneCellPath p{g.one_gen(names[0])->src, names};
    try {
      assert_path(g, p);
    } catch (const DiagramError& err) {
      throw ElabError{err.what(), "boundary mismatch", e.line, e.col};
    }
    return p;
  }

  RawModel model_block() {
    RawModel m;
    m.line = lex_.peek().line;
    m.name = expect_ident("model name").text;
    expect_punct("{");
    while (!peek_punct("}")) {
      Token t = expect_ident("model declaration");
      if (t.text == "objects") {
        object_section(m.objects);
      } else if (t.text == "unit") {
        expect_punct(":");
        m.unit = expect_ident("object").text;
        expect_punct(";");
      } else if (t.text == "hom") {
        RawModel::Hom h;
        h.src = expect_ident("object").text;
        h.tgt = expect_ident("object").text;
        expect_punct(":");
        h.morphisms = name_list(true);
        expect_punct(";");
        m.homs.push_back(std::move(h));
      } else if (t.text == "id") {
        std::string o = expect_ident("object").text;
        expect_punct("=");
        m.identities[o] = expect_ident("morphism").text;
        expect_punct(";");
      } else if (t.text == "compose" || t.text == "tensor") {
        std::string a = expect_ident("name").text;
        std::string b = expect_ident("name").text;
        expect_punct("=");
        std::string c = expect_ident("name").text;
        expect_punct(";");
        (t.text == "compose" ? m.compose : m.tensor).push_back({{a, b}, c});
      } else {
        fail("unexpected model declaration '" + t.text + "'", t);
      }
    }
    expect_punct("}");
    return m;
  }

  InterpretationDecl interpretation_block() {
    InterpretationDecl i;
    i.line = lex_.peek().line;
    i.name = expect_ident("interpretation name").text;
    if (expect_ident("'for'").text != "for") fail("expected 'for'", lex_.peek());
    i.theory = expect_ident("theory name").text;
    expect_punct("{");
    while (!peek_punct("}")) {
      Token t = expect_ident("interpretation declaration");
      if (t.text == "model") {
        expect_punct(":");
        i.model = expect_ident("model name").text;
        expect_punct(";");
      } else if (t.text == "object" || t.text == "edge") {
        std::string n = expect_ident("name").text;
        expect_punct("=");
        std::string v = expect_ident("value").text;
        expect_punct(";");
        (t.text == "object" ? i.objects : i.edges)[n] = v;
      } else {
        fail("unexpected interpretation declaration '" + t.text + "'", t);
      }
    }
    expect_punct("}");
    return i;
  }

  Lexer lex_;
};

}  // namespace detail

inline CollageFile parse_collage(std::string_view source) {
  return detail::Parser(source).file();
}

// --- printing ---------------------------------------------------------

namespace detail {

inline std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace detail

inline std::string diagram_to_expr(const SlicedDiagram& d) {
  if (d.layers.empty()) {
    if (d.domain.wires.empty()) return "id(@" + d.domain.start + ")";
    return "id(" + detail::join(d.domain.wires) + ")";
  }
  std::string out;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& l = d.layers[i];
    if (i) out += " ; ";
    std::string piece = l.gen;
    if (!l.left.empty()) piece = detail::join(l.left) + " | " + piece;
    if (!l.right.empty()) piece += " | " + detail::join(l.right);
    out += piece;
  }
  return out;
}

inline std::string print_theory(const TheoryDecl& d) {
  std::ostringstream o;
  auto objects = [&](const char* label, const std::vector<std::string>& v) {
    if (!v.empty()) o << "  " << label << ": " << detail::join(v) << ";\n";
  };
  auto edges = [&](const char* label, const std::vector<Edge>& es) {
    for (const auto& e : es)
      o << "  " << label << " " << e.name << " : " << detail::join(e.dom) << " -> "
        << detail::join(e.cod) << ";\n";
  };
  switch (d.kind) {
    case TheoryDecl::Monoidal:
      o << "monoidal theory " << d.name << " {\n";
      objects("objects", d.poly.objects);
      edges("edge", d.poly.edges);
      break;
    case TheoryDecl::Two: {
      o << "two theory " << d.name << " {\n";
      objects("zero cells", d.two.zero_cells);
      for (const auto& g1 : d.two.one_generators)
        o << "  one cell " << g1.name << " : " << g1.src << " -> " << g1.tgt << ";\n";
      auto path = [](const std::string& start, const std::vector<std::string>& wires) {
        return wires.empty() ? "@" + start : detail::join(wires);
      };
      for (const auto& g2 : d.two.two_generators)
        o << "  two cell " << g2.name << " : " << path(g2.dom_start, g2.dom) << " -> "
          << path(g2.cod_start, g2.cod) << ";\n";
      break;
    }
    case TheoryDecl::Bimodular:
      o << "bimodular theory " << d.name << " {\n";
      objects("left objects", d.bimod.left_objects);
      objects("right objects", d.bimod.right_objects);
      objects("center objects", d.bimod.center_objects);
      edges("left edge", d.bimod.left_edges);
      edges("right edge", d.bimod.right_edges);
      edges("central edge", d.bimod.central_edges);
      break;
    case TheoryDecl::FunctorBox:
      o << "functorbox theory " << d.name << " {\n";
      objects("plain objects", d.fbox.plain_objects);
      objects("box objects", d.fbox.box_objects);
      edges("plain edge", d.fbox.plain_edges);
      edges("box edge", d.fbox.box_edges);
      edges("inbox edge", d.fbox.in_box_edges);
      edges("outbox edge", d.fbox.out_box_edges);
      break;
  }
  for (const auto& [name, diag] : d.diagrams)
    o << "  diagram " << name << " : " << diagram_to_expr(diag) << ";\n";
  for (const auto& [name, diag] : d.internal_diagrams)
    o << "  internal diagram " << name << " : " << diagram_to_expr(diag) << ";\n";
  for (const auto& eq : d.equations)
    o << "  equation " << eq.name << " : " << diagram_to_expr(eq.lhs) << " = "
      << diagram_to_expr(eq.rhs) << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace collage

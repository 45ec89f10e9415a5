#include "sstt/syntax/lexer.h"

#include <fmt/format.h>

#include <array>
#include <cctype>
#include <utility>

namespace sstt::syntax {

namespace {

struct Spelling {
  std::string_view text;
  Tok kind;
};

// Longest spellings first so that greedy matching picks `|->` over `|`.
constexpr std::array kSymbols = {
    Spelling{"#entails", Tok::kHashEntails},
    Spelling{"#check", Tok::kHashCheck},
    Spelling{"|->", Tok::kMapsTo},
    Spelling{":=", Tok::kDefEq},
    Spelling{"->", Tok::kArrow},
    Spelling{"=>", Tok::kImplies},
    Spelling{"<=", Tok::kLe},
    Spelling{"==", Tok::kEqEq},
    Spelling{"/\\", Tok::kAnd},
    Spelling{"\\/", Tok::kOr},
    Spelling{"→", Tok::kArrow},
    Spelling{"↦", Tok::kMapsTo},
    Spelling{"λ", Tok::kBackslash},
    Spelling{"×", Tok::kStar},
    Spelling{"⇒", Tok::kImplies},
    Spelling{"≤", Tok::kLe},
    Spelling{"≡", Tok::kEqEq},
    Spelling{"∧", Tok::kAnd},
    Spelling{"∨", Tok::kOr},
    Spelling{"⊤", Tok::kTop},
    Spelling{"⊥", Tok::kBot},
    Spelling{"⊆", Tok::kSubseteq},
    Spelling{"⟨", Tok::kLAngle},
    Spelling{"⟩", Tok::kRAngle},
    Spelling{"Σ", Tok::kSigma},
    Spelling{"\U0001d4b0", Tok::kUniverse},  // 𝒰
    Spelling{"(", Tok::kLParen},
    Spelling{")", Tok::kRParen},
    Spelling{"{", Tok::kLBrace},
    Spelling{"}", Tok::kRBrace},
    Spelling{"[", Tok::kLBracket},
    Spelling{"]", Tok::kRBracket},
    Spelling{"<", Tok::kLAngle},
    Spelling{">", Tok::kRAngle},
    Spelling{",", Tok::kComma},
    Spelling{";", Tok::kSemi},
    Spelling{":", Tok::kColon},
    Spelling{"|", Tok::kBar},
    Spelling{"\\", Tok::kBackslash},
    Spelling{"@", Tok::kAt},
    Spelling{"*", Tok::kStar},
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::kEnd: return "end of input";
    case Tok::kIdent: return "identifier";
    case Tok::kNumber: return "number";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kLAngle: return "'<'";
    case Tok::kRAngle: return "'>'";
    case Tok::kComma: return "','";
    case Tok::kSemi: return "';'";
    case Tok::kColon: return "':'";
    case Tok::kDefEq: return "':='";
    case Tok::kDot: return "'.'";
    case Tok::kProj1: return "'.1'";
    case Tok::kProj2: return "'.2'";
    case Tok::kArrow: return "'->'";
    case Tok::kMapsTo: return "'|->'";
    case Tok::kBar: return "'|'";
    case Tok::kBackslash: return "'\\'";
    case Tok::kAt: return "'@'";
    case Tok::kStar: return "'*'";
    case Tok::kImplies: return "'=>'";
    case Tok::kLe: return "'<='";
    case Tok::kEqEq: return "'=='";
    case Tok::kAnd: return "'/\\'";
    case Tok::kOr: return "'\\/'";
    case Tok::kTop: return "'TOP'";
    case Tok::kBot: return "'BOT'";
    case Tok::kSubseteq: return "'⊆'";
    case Tok::kSigma: return "'Sig'";
    case Tok::kUniverse: return "'U'";
    case Tok::kHashCheck: return "'#check'";
    case Tok::kHashEntails: return "'#entails'";
  }
  return "token";
}

SyntaxError::SyntaxError(std::string message, Span span, std::vector<std::string> expected)
    : std::runtime_error(fmt::format("{}:{}:{}: syntax error: {}", span.file, span.line,
                                     span.col, message)),
      message_(std::move(message)),
      span_(std::move(span)),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  std::size_t line_start = 0;

  auto make_span = [&](std::size_t begin, std::size_t len) {
    return Span{file, line, static_cast<int>(begin - line_start) + 1, begin, len};
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t begin = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      std::string word(text.substr(begin, i - begin));
      Tok kind = Tok::kIdent;
      if (word == "TOP") kind = Tok::kTop;
      else if (word == "BOT") kind = Tok::kBot;
      else if (word == "Sig") kind = Tok::kSigma;
      else if (word == "U") kind = Tok::kUniverse;
      out.push_back(Token{kind, std::move(word), make_span(begin, i - begin)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t begin = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back(Token{Tok::kNumber, std::string(text.substr(begin, i - begin)),
                          make_span(begin, i - begin)});
      continue;
    }
    if (c == '.') {
      // `.1` / `.2` are projections unless the digit starts a longer word.
      if (i + 1 < text.size() && (text[i + 1] == '1' || text[i + 1] == '2') &&
          (i + 2 >= text.size() || !is_ident_char(text[i + 2]))) {
        Tok kind = text[i + 1] == '1' ? Tok::kProj1 : Tok::kProj2;
        out.push_back(Token{kind, std::string(text.substr(i, 2)), make_span(i, 2)});
        i += 2;
        continue;
      }
      out.push_back(Token{Tok::kDot, ".", make_span(i, 1)});
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (text.substr(i).starts_with(sym.text)) {
        out.push_back(Token{sym.kind, std::string(sym.text), make_span(i, sym.text.size())});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw SyntaxError(fmt::format("unexpected character '{}'", text.substr(i, 1)),
                        make_span(i, 1));
    }
  }
  out.push_back(Token{Tok::kEnd, "", make_span(i, 0)});
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != Tok::kEnd) tokens_.push_back(Token{});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  if (idx >= tokens_.size()) return tokens_.back();
  return tokens_[idx];
}

bool TokenStream::at_ident(std::string_view text) const {
  return peek().kind == Tok::kIdent && peek().text == text;
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Tok kind, std::string_view what) {
  if (!at(kind)) {
    std::string wanted = what.empty() ? std::string(tok_name(kind)) : std::string(what);
    fail(fmt::format("expected {}, found {}", wanted,
                     peek().kind == Tok::kEnd ? std::string("end of input")
                                              : fmt::format("'{}'", peek().text)),
         {wanted});
  }
  return next();
}

void TokenStream::fail(std::string message, std::vector<std::string> expected) const {
  throw SyntaxError(std::move(message), peek().span, std::move(expected));
}

}  // namespace sstt::syntax

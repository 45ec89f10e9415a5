#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sstt::syntax {

// Source position. Lines and columns are 1-based; columns count bytes.
struct Span {
  std::string file;
  int line = 1;
  int col = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

enum class Tok {
  kEnd,
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kLAngle,
  kRAngle,
  kComma,
  kSemi,
  kColon,
  kDefEq,     // :=
  kDot,
  kProj1,     // .1
  kProj2,     // .2
  kArrow,     // ->  →
  kMapsTo,    // |-> ↦
  kBar,
  kBackslash, // \  λ
  kAt,
  kStar,      // *  ×
  kImplies,   // =>  ⇒
  kLe,        // <=  ≤
  kEqEq,      // ==  ≡
  kAnd,       // /\  ∧
  kOr,        // \/  ∨
  kTop,       // TOP ⊤
  kBot,       // BOT ⊥
  kSubseteq,  // ⊆
  kSigma,     // Sig Σ
  kUniverse,  // U 𝒰
  kHashCheck,
  kHashEntails,
};

std::string_view tok_name(Tok t);

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Span span;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string message, Span span, std::vector<std::string> expected = {});

  const Span& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::string message_;
  Span span_;
  std::vector<std::string> expected_;
};

// Tokenizes the whole input. ASCII and Unicode spellings of an operator map to
// the same token kind. `--` starts a line comment.
std::vector<Token> tokenize(std::string_view text, const std::string& file = "<input>");

// Cursor over a token vector with the small helpers every recursive-descent
// parser here needs.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Tok kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }
  bool at_ident(std::string_view text) const;
  const Token& next();
  bool accept(Tok kind);
  const Token& expect(Tok kind, std::string_view what = {});
  [[noreturn]] void fail(std::string message, std::vector<std::string> expected = {}) const;

  std::size_t position() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace sstt::syntax

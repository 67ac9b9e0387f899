#include "fasim/xml.hpp"

#include "fasim/error.hpp"

namespace fasim::xml {

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.'; }

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view doc) : doc_(doc) {}

  Element document() {
    if (doc_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    if (doc_.substr(pos_).starts_with("<?xml")) skip_pi();
    skip_misc();
    if (!peek("<")) fail("expected root element");
    Element root = element();
    skip_misc();
    if (pos_ != doc_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::MalformedXML, "line " + std::to_string(line()) + ": " + why);
  }

  int line() const {
    int n = 1;
    for (std::size_t i = 0; i < pos_ && i < doc_.size(); ++i) n += doc_[i] == '\n' ? 1 : 0;
    return n;
  }

  bool peek(std::string_view s) const { return doc_.substr(pos_).starts_with(s); }

  void expect(std::string_view s) {
    if (!peek(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  void skip_space() {
    while (pos_ < doc_.size() && is_space(doc_[pos_])) ++pos_;
  }

  void skip_until(std::string_view terminator, std::string_view what) {
    const auto end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) fail("unterminated " + std::string(what));
    pos_ = end + terminator.size();
  }

  void skip_pi() {
    pos_ += 2;
    skip_until("?>", "processing instruction");
  }

  void skip_comment() {
    pos_ += 4;
    const auto end = doc_.find("--", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    pos_ = end;
    expect("-->");
  }

  void skip_misc() {
    for (;;) {
      skip_space();
      if (peek("<!--")) {
        skip_comment();
      } else if (peek("<?")) {
        skip_pi();
      } else if (peek("<!DOCTYPE")) {
        fail("DOCTYPE is not supported");
      } else {
        return;
      }
    }
  }

  std::string name() {
    const std::size_t begin = pos_;
    if (pos_ >= doc_.size() || !is_name_start(doc_[pos_])) fail("expected name");
    while (pos_ < doc_.size() && is_name_char(doc_[pos_])) ++pos_;
    return std::string(doc_.substr(begin, pos_ - begin));
  }

  void reference(std::string& out) {
    ++pos_;  // '&'
    const auto end = doc_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 10) fail("bad entity reference");
    const std::string_view ref = doc_.substr(pos_, end - pos_);
    pos_ = end + 1;
    if (ref == "lt") out += '<';
    else if (ref == "gt") out += '>';
    else if (ref == "amp") out += '&';
    else if (ref == "quot") out += '"';
    else if (ref == "apos") out += '\'';
    else if (ref.starts_with("#")) {
      const bool hex = ref.size() > 1 && ref[1] == 'x';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      unsigned long cp = 0;
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity '&" + std::string(ref) + ";'");
    }
  }

  std::string attribute_value() {
    if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\'')) fail("expected quoted attribute value");
    const char quote = doc_[pos_++];
    std::string out;
    while (pos_ < doc_.size() && doc_[pos_] != quote) {
      if (doc_[pos_] == '<') fail("'<' in attribute value");
      if (doc_[pos_] == '&') {
        reference(out);
      } else {
        out += doc_[pos_++];
      }
    }
    if (pos_ >= doc_.size()) fail("unterminated attribute value");
    ++pos_;
    return out;
  }

  Element element() {
    Element el;
    el.line = line();
    expect("<");
    el.name = name();
    for (;;) {
      const bool had_space = pos_ < doc_.size() && is_space(doc_[pos_]);
      skip_space();
      if (peek("/>")) {
        pos_ += 2;
        return el;
      }
      if (peek(">")) {
        ++pos_;
        break;
      }
      if (!had_space) fail("expected whitespace before attribute");
      std::string key = name();
      skip_space();
      expect("=");
      skip_space();
      std::string value = attribute_value();
      if (el.attribute(key) != nullptr) fail("duplicate attribute '" + key + "'");
      el.attributes.emplace_back(std::move(key), std::move(value));
    }
    for (;;) {
      if (pos_ >= doc_.size()) fail("unterminated element <" + el.name + ">");
      if (peek("</")) {
        pos_ += 2;
        const std::string closing = name();
        if (closing != el.name) fail("mismatched </" + closing + "> for <" + el.name + ">");
        skip_space();
        expect(">");
        return el;
      }
      if (peek("<!--")) {
        skip_comment();
      } else if (peek("<![CDATA[")) {
        pos_ += 9;
        const auto end = doc_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        el.text.append(doc_.substr(pos_, end - pos_));
        pos_ = end + 3;
      } else if (peek("<?")) {
        skip_pi();
      } else if (peek("<")) {
        el.children.push_back(element());
      } else if (doc_[pos_] == '&') {
        reference(el.text);
      } else {
        el.text += doc_[pos_++];
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse(std::string_view document) { return Parser(document).document(); }

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace fasim::xml

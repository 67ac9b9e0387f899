#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fasim::xml {

/// Element node. Text content is the concatenation of character data
/// directly inside the element (comments and processing instructions
/// dropped, entities decoded).
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;
  int line = 0;

  const std::string* attribute(std::string_view key) const;
};

/// Parses a UTF-8 document with a single root element. Supports the XML
/// declaration, comments, processing instructions, CDATA, the five
/// predefined entities and numeric character references. DOCTYPE is
/// rejected. Throws Error(MalformedXML) with a line number.
Element parse(std::string_view document);

std::string escape(std::string_view text);

}  // namespace fasim::xml

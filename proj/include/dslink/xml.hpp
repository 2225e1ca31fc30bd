// Minimal XML reader for the small documents this system exchanges
// (profiles, verdicts, reports).  Element tree with attributes and text;
// no namespaces, no DTD validation.  Unknown elements are preserved so
// callers can ignore them.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace dslink::xml {

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::string text;  // concatenated character data directly inside this element

    const Element* child(std::string_view child_name) const;
    std::vector<const Element*> children_named(std::string_view child_name) const;
    const std::string* attribute(std::string_view attr_name) const;
    std::string trimmed_text() const;
};

struct XmlError {
    std::string message;
    std::size_t position;
};

using XmlResult = std::variant<Element, XmlError>;

// Parses a complete document: optional declaration, comments, one root
// element.  Returns the root.
XmlResult parse(std::string_view document);

inline const Element* get_element(const XmlResult& r) { return std::get_if<Element>(&r); }
inline const XmlError* get_xml_error(const XmlResult& r) { return std::get_if<XmlError>(&r); }

std::string escape_text(std::string_view s);
std::string escape_attribute(std::string_view s);

}  // namespace dslink::xml

#include "dslink/xml.hpp"

#include <cctype>

namespace dslink::xml {
namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

bool is_name_start(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalpha(u) != 0 || c == '_' || c == ':';
}

bool is_name_char(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '_' || c == ':' || c == '-' || c == '.';
}

class Parser {
public:
    explicit Parser(std::string_view doc) : doc_(doc) {}

    XmlResult run() {
        skip_misc();
        Element root;
        if (!parse_element(root)) return XmlError{error_, error_pos_};
        skip_misc();
        if (pos_ != doc_.size()) return XmlError{"trailing content after root element", pos_};
        return root;
    }

private:
    std::string_view doc_;
    std::size_t pos_ = 0;
    std::string error_;
    std::size_t error_pos_ = 0;

    bool fail(const std::string& message) {
        if (error_.empty()) {
            error_ = message;
            error_pos_ = pos_;
        }
        return false;
    }

    bool eof() const { return pos_ >= doc_.size(); }
    char peek() const { return doc_[pos_]; }
    bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

    void skip_spaces() {
        while (!eof() && is_space(peek())) ++pos_;
    }

    bool skip_until(std::string_view terminator, const char* what) {
        const auto found = doc_.find(terminator, pos_);
        if (found == std::string_view::npos) return fail(std::string("unterminated ") + what);
        pos_ = found + terminator.size();
        return true;
    }

    // whitespace, comments, declaration, processing instructions, doctype
    void skip_misc() {
        for (;;) {
            skip_spaces();
            if (starts_with("\xef\xbb\xbf")) { pos_ += 3; continue; }
            if (starts_with("<!--")) {
                if (!skip_until("-->", "comment")) return;
                continue;
            }
            if (starts_with("<?")) {
                if (!skip_until("?>", "processing instruction")) return;
                continue;
            }
            if (starts_with("<!DOCTYPE")) {
                if (!skip_until(">", "doctype")) return;
                continue;
            }
            return;
        }
    }

    bool parse_name(std::string& out) {
        if (eof() || !is_name_start(peek())) return fail("expected name");
        const std::size_t start = pos_;
        ++pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        out.assign(doc_.substr(start, pos_ - start));
        return true;
    }

    bool parse_entity(std::string& out) {
        // pos_ is at '&'
        const auto semi = doc_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 10) return fail("unterminated entity reference");
        std::string_view name = doc_.substr(pos_ + 1, semi - pos_ - 1);
        if (name == "amp") out.push_back('&');
        else if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos") out.push_back('\'');
        else if (!name.empty() && name[0] == '#') {
            int base = 10;
            std::string_view digits = name.substr(1);
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits = digits.substr(1);
            }
            if (digits.empty()) return fail("bad character reference");
            unsigned long value = 0;
            for (char c : digits) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else return fail("bad character reference");
                value = value * base + static_cast<unsigned long>(d);
                if (value > 0x10ffff) return fail("character reference out of range");
            }
            append_utf8(out, value);
        } else {
            return fail("unknown entity reference");
        }
        pos_ = semi + 1;
        return true;
    }

    static void append_utf8(std::string& out, unsigned long cp) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else {
            out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        }
    }

    bool parse_attribute_value(std::string& out) {
        if (eof() || (peek() != '"' && peek() != '\'')) return fail("expected quoted attribute value");
        const char quote = peek();
        ++pos_;
        while (!eof() && peek() != quote) {
            if (peek() == '&') {
                if (!parse_entity(out)) return false;
            } else {
                out.push_back(peek());
                ++pos_;
            }
        }
        if (eof()) return fail("unterminated attribute value");
        ++pos_;
        return true;
    }

    bool parse_element(Element& out) {
        if (eof() || peek() != '<') return fail("expected element");
        ++pos_;
        if (!parse_name(out.name)) return false;

        for (;;) {
            skip_spaces();
            if (eof()) return fail("unterminated start tag");
            if (peek() == '/') {
                ++pos_;
                if (eof() || peek() != '>') return fail("malformed self-closing tag");
                ++pos_;
                return true;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string attr_name;
            if (!parse_name(attr_name)) return false;
            skip_spaces();
            if (eof() || peek() != '=') return fail("expected '=' in attribute");
            ++pos_;
            skip_spaces();
            std::string attr_value;
            if (!parse_attribute_value(attr_value)) return false;
            out.attributes.emplace_back(std::move(attr_name), std::move(attr_value));
        }

        // content
        for (;;) {
            if (eof()) return fail("unterminated element <" + out.name + ">");
            if (peek() == '<') {
                if (starts_with("<!--")) {
                    if (!skip_until("-->", "comment")) return false;
                    continue;
                }
                if (starts_with("<![CDATA[")) {
                    const auto end = doc_.find("]]>", pos_ + 9);
                    if (end == std::string_view::npos) return fail("unterminated CDATA section");
                    out.text.append(doc_.substr(pos_ + 9, end - pos_ - 9));
                    pos_ = end + 3;
                    continue;
                }
                if (starts_with("<?")) {
                    if (!skip_until("?>", "processing instruction")) return false;
                    continue;
                }
                if (starts_with("</")) {
                    pos_ += 2;
                    std::string close_name;
                    if (!parse_name(close_name)) return false;
                    if (close_name != out.name) return fail("mismatched closing tag </" + close_name + ">");
                    skip_spaces();
                    if (eof() || peek() != '>') return fail("malformed closing tag");
                    ++pos_;
                    return true;
                }
                Element child;
                if (!parse_element(child)) return false;
                out.children.push_back(std::move(child));
                continue;
            }
            if (peek() == '&') {
                if (!parse_entity(out.text)) return false;
                continue;
            }
            out.text.push_back(peek());
            ++pos_;
        }
    }
};

}  // namespace

const Element* Element::child(std::string_view child_name) const {
    for (const Element& c : children) {
        if (c.name == child_name) return &c;
    }
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view child_name) const {
    std::vector<const Element*> out;
    for (const Element& c : children) {
        if (c.name == child_name) out.push_back(&c);
    }
    return out;
}

const std::string* Element::attribute(std::string_view attr_name) const {
    for (const auto& [name, value] : attributes) {
        if (name == attr_name) return &value;
    }
    return nullptr;
}

std::string Element::trimmed_text() const {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    return text.substr(begin, end - begin);
}

XmlResult parse(std::string_view document) {
    return Parser(document).run();
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attribute(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace dslink::xml

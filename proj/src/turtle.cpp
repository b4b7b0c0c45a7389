#include "bimsem/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <vector>

#include "bimsem/errors.hpp"

namespace bimsem {

namespace {

const char* kAttrIri = "http://bimsem.dev/ontology/attribute#";
const char* kCbimIri = "http://bimsem.dev/ontology/cbim#";
const char* kInstIri = "http://bimsem.dev/model/instance#";

std::string capitalize(const std::string& cls) {
    std::string s = cls;
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string lowercase(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// 12 significant digits: parse-back error <= 5e-12 relative, which keeps
// the serialize/parse identity within its 1e-9 attribute tolerance.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string serialize_turtle(const BimGraph& graph) {
    std::ostringstream out;
    out << "@prefix attr: <" << kAttrIri << "> .\n";
    out << "@prefix cbim: <" << kCbimIri << "> .\n";
    out << "@prefix inst: <" << kInstIri << "> .\n";

    for (const auto& [name, node] : graph.nodes) {
        out << "\ninst:" << name << " a cbim:" << capitalize(node.cls);
        // attribute predicates in sorted order; axis and central point are
        // folded into the same namespace
        std::vector<std::pair<std::string, std::string>> attrs;
        if (node.attributes.axis) attrs.push_back({"axis", std::string(1, *node.attributes.axis)});
        if (node.attributes.oriented_fallback) attrs.push_back({"axis_fallback", "true"});
        if (node.attributes.central_point) {
            attrs.push_back({"central_x", num(node.attributes.central_point->x)});
            attrs.push_back({"central_y", num(node.attributes.central_point->y)});
            attrs.push_back({"central_z", num(node.attributes.central_point->z)});
        }
        for (const auto& [k, v] : node.attributes.scalars) attrs.push_back({k, num(v)});
        std::sort(attrs.begin(), attrs.end());
        for (const auto& [k, v] : attrs) out << " ;\n    attr:" << k << " \"" << v << "\"";
        out << " .\n";
    }

    if (!graph.edges.empty()) out << "\n";
    for (const auto& e : graph.edges) // std::set is already sorted by (s, p, o)
        out << "inst:" << e.subject << " cbim:" << to_string(e.predicate) << " inst:" << e.object
            << " .\n";
    return out.str();
}

namespace {

struct Token {
    std::string text;
    int line = 0;
    bool literal = false;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    int line = 1;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') { // comment to end of line
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '"') {
            size_t j = i + 1;
            while (j < n && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= n || text[j] != '"')
                throw FormatError("turtle: line " + std::to_string(line) +
                                  ": unterminated string literal");
            tokens.push_back({text.substr(i + 1, j - i - 1), line, true});
            i = j + 1;
            continue;
        }
        if (c == ';' || c == '.') {
            tokens.push_back({std::string(1, c), line, false});
            ++i;
            continue;
        }
        size_t j = i;
        while (j < n && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ';' &&
               text[j] != '"')
            ++j;
        std::string tok = text.substr(i, j - i);
        // a statement-terminating '.' may be glued to the last token
        if (tok.size() > 1 && tok.back() == '.' && tok.find(':') != std::string::npos) {
            tok.pop_back();
            tokens.push_back({tok, line, false});
            tokens.push_back({".", line, false});
        } else {
            tokens.push_back({tok, line, false});
        }
        i = j;
    }
    return tokens;
}

struct ParsedTriple {
    std::string subject;   // local name under inst:
    std::string predicate; // "a", "attr:<k>" or "cbim:<k>"
    std::string object;    // literal text or prefixed name
    bool object_is_literal = false;
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw FormatError("turtle: line " + std::to_string(line) + ": " + msg);
}

} // namespace

BimGraph parse_turtle(const std::string& text) {
    const auto tokens = tokenize(text);
    std::map<std::string, std::string> prefixes; // label (with colon) -> iri
    std::vector<ParsedTriple> triples;

    auto check_prefixed = [&](const Token& t) {
        const size_t colon = t.text.find(':');
        if (t.literal || colon == std::string::npos)
            fail(t.line, "expected a prefixed name, got '" + t.text + "'");
        const std::string prefix = t.text.substr(0, colon + 1);
        if (!prefixes.count(prefix)) fail(t.line, "unknown prefix '" + prefix + "'");
    };

    size_t i = 0;
    auto next = [&]() -> const Token& {
        if (i >= tokens.size())
            throw FormatError("turtle: unexpected end of input");
        return tokens[i++];
    };

    while (i < tokens.size()) {
        const Token& first = next();
        if (first.text == "@prefix") {
            const Token& label = next();
            const Token& iri = next();
            const Token& dot = next();
            if (label.text.empty() || label.text.back() != ':')
                fail(label.line, "malformed prefix label '" + label.text + "'");
            if (iri.text.size() < 2 || iri.text.front() != '<' || iri.text.back() != '>')
                fail(iri.line, "malformed prefix IRI '" + iri.text + "'");
            if (dot.text != ".") fail(dot.line, "expected '.' after @prefix");
            prefixes[label.text] = iri.text.substr(1, iri.text.size() - 2);
            continue;
        }

        check_prefixed(first);
        if (first.text.rfind("inst:", 0) != 0)
            fail(first.line, "subjects must be inst: names, got '" + first.text + "'");
        const std::string subject = first.text.substr(5);

        while (true) {
            const Token& pred = next();
            std::string predicate;
            if (pred.text == "a") {
                predicate = "a";
            } else {
                check_prefixed(pred);
                if (pred.text.rfind("attr:", 0) != 0 && pred.text.rfind("cbim:", 0) != 0)
                    fail(pred.line, "unsupported predicate '" + pred.text + "'");
                predicate = pred.text;
            }
            const Token& obj = next();
            if (!obj.literal) check_prefixed(obj);
            triples.push_back({subject, predicate, obj.text, obj.literal, obj.line});
            const Token& punct = next();
            if (punct.text == ";") continue;
            if (punct.text == ".") break;
            fail(punct.line, "expected ';' or '.', got '" + punct.text + "'");
        }
    }

    // assemble the graph
    BimGraph graph;
    struct Pending {
        GraphNode node;
        bool has_class = false;
        bool has_cx = false, has_cy = false, has_cz = false;
        Vec3 central;
        int line = 0;
    };
    std::map<std::string, Pending> pending;
    std::vector<std::pair<Relation, int>> edges;

    for (const auto& t : triples) {
        Pending& p = pending[t.subject];
        if (p.line == 0) p.line = t.line;
        if (t.predicate == "a") {
            if (t.object.rfind("cbim:", 0) != 0)
                fail(t.line, "object type must be a cbim: class");
            p.node.cls = lowercase(t.object.substr(5));
            p.has_class = true;
        } else if (t.predicate.rfind("attr:", 0) == 0) {
            const std::string key = t.predicate.substr(5);
            if (!t.object_is_literal) fail(t.line, "attribute values must be string literals");
            if (key == "axis") {
                if (t.object != "x" && t.object != "y")
                    fail(t.line, "axis must be \"x\" or \"y\"");
                p.node.attributes.axis = t.object[0];
            } else if (key == "axis_fallback") {
                p.node.attributes.oriented_fallback = (t.object == "true");
            } else {
                double v = 0.0;
                try {
                    size_t used = 0;
                    v = std::stod(t.object, &used);
                    if (used != t.object.size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    fail(t.line, "bad numeric literal \"" + t.object + "\"");
                }
                if (key == "central_x") { p.central.x = v; p.has_cx = true; }
                else if (key == "central_y") { p.central.y = v; p.has_cy = true; }
                else if (key == "central_z") { p.central.z = v; p.has_cz = true; }
                else p.node.attributes.scalars[key] = v;
            }
        } else { // cbim: relation
            const std::string rel = t.predicate.substr(5);
            if (t.object_is_literal || t.object.rfind("inst:", 0) != 0)
                fail(t.line, "relation object must be an inst: name");
            Relation r{t.subject, predicate_from_string(rel), t.object.substr(5)};
            edges.push_back({r, t.line});
        }
    }

    for (auto& [name, p] : pending) {
        if (!p.has_class)
            throw IntegrityError("turtle: node 'inst:" + name + "' has no type triple");
        if (p.has_cx || p.has_cy || p.has_cz) {
            if (!(p.has_cx && p.has_cy && p.has_cz))
                fail(p.line, "incomplete central point on 'inst:" + name + "'");
            p.node.attributes.central_point = p.central;
        }
        const std::string want = p.node.cls + "_";
        if (name.rfind(want, 0) != 0)
            throw IntegrityError("node name '" + name + "' does not match class '" + p.node.cls +
                                 "'");
        p.node.source_id = name.substr(want.size());
        graph.nodes[name] = std::move(p.node);
    }
    for (const auto& [r, line] : edges) {
        if (!graph.nodes.count(r.object))
            throw IntegrityError("referential-integrity: edge object 'inst:" + r.object +
                                 "' has no node block");
        graph.edges.insert(r);
    }

    validate_graph(graph);
    return graph;
}

} // namespace bimsem

#include "bimsem/ply.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "bimsem/errors.hpp"

namespace bimsem {

namespace {

enum class ScalarType { i8, u8, i16, u16, i32, u32, f32, f64 };

size_t scalar_size(ScalarType t) {
    switch (t) {
        case ScalarType::i8:
        case ScalarType::u8: return 1;
        case ScalarType::i16:
        case ScalarType::u16: return 2;
        case ScalarType::i32:
        case ScalarType::u32: return 4;
        case ScalarType::f32: return 4;
        case ScalarType::f64: return 8;
    }
    return 0;
}

ScalarType parse_type(const std::string& s) {
    if (s == "char" || s == "int8") return ScalarType::i8;
    if (s == "uchar" || s == "uint8") return ScalarType::u8;
    if (s == "short" || s == "int16") return ScalarType::i16;
    if (s == "ushort" || s == "uint16") return ScalarType::u16;
    if (s == "int" || s == "int32") return ScalarType::i32;
    if (s == "uint" || s == "uint32") return ScalarType::u32;
    if (s == "float" || s == "float32") return ScalarType::f32;
    if (s == "double" || s == "float64") return ScalarType::f64;
    throw FormatError("ply: unknown property type '" + s + "'");
}

struct Property {
    std::string name;
    bool is_list = false;
    ScalarType count_type = ScalarType::u8;
    ScalarType value_type = ScalarType::f32;
};

struct Element {
    std::string name;
    size_t count = 0;
    std::vector<Property> properties;
};

struct Header {
    PlyFormat format = PlyFormat::ascii;
    std::vector<Element> elements;
    size_t data_offset = 0; // byte offset just past "end_header\n"
};

Header parse_header(const std::string& content) {
    Header h;
    size_t pos = 0;
    bool saw_ply = false, saw_format = false, saw_end = false;
    while (pos < content.size()) {
        size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) eol = content.size();
        std::string line = content.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        pos = eol + 1;

        std::istringstream ss(line);
        std::string kw;
        ss >> kw;
        if (!saw_ply) {
            if (kw != "ply") throw FormatError("ply: file does not start with 'ply'");
            saw_ply = true;
            continue;
        }
        if (kw == "comment" || kw == "obj_info" || kw.empty()) continue;
        if (kw == "format") {
            std::string fmt, version;
            ss >> fmt >> version;
            if (fmt == "ascii") h.format = PlyFormat::ascii;
            else if (fmt == "binary_little_endian") h.format = PlyFormat::binary_little_endian;
            else throw FormatError("ply: unsupported format '" + fmt + "'");
            saw_format = true;
        } else if (kw == "element") {
            Element e;
            ss >> e.name >> e.count;
            if (ss.fail()) throw FormatError("ply: malformed element line");
            h.elements.push_back(e);
        } else if (kw == "property") {
            if (h.elements.empty()) throw FormatError("ply: property before any element");
            std::string t;
            ss >> t;
            Property p;
            if (t == "list") {
                std::string ct, vt;
                ss >> ct >> vt >> p.name;
                p.is_list = true;
                p.count_type = parse_type(ct);
                p.value_type = parse_type(vt);
            } else {
                p.value_type = parse_type(t);
                ss >> p.name;
            }
            if (ss.fail()) throw FormatError("ply: malformed property line");
            h.elements.back().properties.push_back(p);
        } else if (kw == "end_header") {
            saw_end = true;
            h.data_offset = pos;
            break;
        } else {
            throw FormatError("ply: unknown header keyword '" + kw + "'");
        }
    }
    if (!saw_format) throw FormatError("ply: missing format line");
    if (!saw_end) throw FormatError("ply: missing end_header");
    return h;
}

class BinaryCursor {
public:
    BinaryCursor(const std::string& data, size_t offset) : data_(data), pos_(offset) {}

    double read(ScalarType t) {
        const size_t n = scalar_size(t);
        if (pos_ + n > data_.size()) throw FormatError("ply: unexpected end of binary data");
        const char* p = data_.data() + pos_;
        pos_ += n;
        switch (t) {
            case ScalarType::i8: { int8_t v; std::memcpy(&v, p, 1); return v; }
            case ScalarType::u8: { uint8_t v; std::memcpy(&v, p, 1); return v; }
            case ScalarType::i16: { int16_t v; std::memcpy(&v, p, 2); return v; }
            case ScalarType::u16: { uint16_t v; std::memcpy(&v, p, 2); return v; }
            case ScalarType::i32: { int32_t v; std::memcpy(&v, p, 4); return v; }
            case ScalarType::u32: { uint32_t v; std::memcpy(&v, p, 4); return v; }
            case ScalarType::f32: { float v; std::memcpy(&v, p, 4); return v; }
            case ScalarType::f64: { double v; std::memcpy(&v, p, 8); return v; }
        }
        return 0.0;
    }

private:
    const std::string& data_;
    size_t pos_;
};

class AsciiCursor {
public:
    AsciiCursor(const std::string& data, size_t offset) : ss_(data.substr(offset)) {}

    double next() {
        double v;
        if (!(ss_ >> v)) throw FormatError("ply: unexpected end of ascii data");
        return v;
    }

private:
    std::istringstream ss_;
};

void add_face(Mesh& mesh, const std::vector<long long>& idx) {
    if (idx.size() < 3) throw FormatError("ply: face with fewer than 3 vertices");
    const long long n = static_cast<long long>(mesh.vertices.size());
    for (long long i : idx)
        if (i < 0 || i >= n)
            throw DataError("index: face index " + std::to_string(i) + " out of range (" +
                            std::to_string(n) + " vertices)");
    // fan triangulation from the first vertex
    for (size_t k = 1; k + 1 < idx.size(); ++k)
        mesh.triangles.push_back({static_cast<int>(idx[0]), static_cast<int>(idx[k]),
                                  static_cast<int>(idx[k + 1])});
}

} // namespace

Mesh load_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();

    Header header = parse_header(content);

    Mesh mesh;
    AsciiCursor ascii(content, header.format == PlyFormat::ascii ? header.data_offset : 0);
    BinaryCursor binary(content, header.data_offset);
    const bool is_ascii = header.format == PlyFormat::ascii;
    auto read_scalar = [&](ScalarType t) { return is_ascii ? ascii.next() : binary.read(t); };

    for (const auto& elem : header.elements) {
        if (elem.name == "vertex") {
            int ix = -1, iy = -1, iz = -1;
            for (size_t i = 0; i < elem.properties.size(); ++i) {
                const auto& p = elem.properties[i];
                if (p.is_list) throw FormatError("ply: list property on vertex element");
                if (p.name == "x") ix = static_cast<int>(i);
                if (p.name == "y") iy = static_cast<int>(i);
                if (p.name == "z") iz = static_cast<int>(i);
            }
            if (ix < 0 || iy < 0 || iz < 0)
                throw FormatError("ply: vertex element lacks x/y/z properties");
            mesh.vertices.reserve(elem.count);
            for (size_t v = 0; v < elem.count; ++v) {
                Vec3 pt;
                for (size_t i = 0; i < elem.properties.size(); ++i) {
                    double val = read_scalar(elem.properties[i].value_type);
                    if (static_cast<int>(i) == ix) pt.x = val;
                    else if (static_cast<int>(i) == iy) pt.y = val;
                    else if (static_cast<int>(i) == iz) pt.z = val;
                }
                mesh.vertices.push_back(pt);
            }
        } else if (elem.name == "face") {
            const Property* list_prop = nullptr;
            for (const auto& p : elem.properties)
                if (p.is_list && (p.name == "vertex_indices" || p.name == "vertex_index"))
                    list_prop = &p;
            if (!list_prop) throw FormatError("ply: face element lacks a vertex index list");
            mesh.triangles.reserve(elem.count);
            for (size_t f = 0; f < elem.count; ++f) {
                for (const auto& p : elem.properties) {
                    if (p.is_list) {
                        long long n = static_cast<long long>(read_scalar(p.count_type));
                        std::vector<long long> idx(static_cast<size_t>(std::max(0LL, n)));
                        for (auto& i : idx) i = static_cast<long long>(read_scalar(p.value_type));
                        if (&p == list_prop) add_face(mesh, idx);
                    } else {
                        read_scalar(p.value_type);
                    }
                }
            }
        } else {
            // skip unknown elements property by property
            for (size_t r = 0; r < elem.count; ++r) {
                for (const auto& p : elem.properties) {
                    if (p.is_list) {
                        long long n = static_cast<long long>(read_scalar(p.count_type));
                        for (long long i = 0; i < n; ++i) read_scalar(p.value_type);
                    } else {
                        read_scalar(p.value_type);
                    }
                }
            }
        }
    }

    if (mesh.vertices.empty()) throw DataError("empty-mesh: ply has no vertices");
    if (mesh.triangles.empty()) throw DataError("empty-mesh: ply has no faces");
    validate_mesh(mesh);
    return mesh;
}

void write_ply(const Mesh& mesh, const std::string& path, PlyFormat format) {
    if (mesh.empty()) throw DataError("empty-mesh: refusing to write an empty mesh");
    validate_mesh(mesh);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");

    out << "ply\n";
    out << (format == PlyFormat::ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n");
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.triangles.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";

    if (format == PlyFormat::ascii) {
        char line[128];
        for (const auto& v : mesh.vertices) {
            std::snprintf(line, sizeof(line), "%.9g %.9g %.9g\n", v.x, v.y, v.z);
            out << line;
        }
        for (const auto& t : mesh.triangles)
            out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    } else {
        for (const auto& v : mesh.vertices) {
            double c[3] = {v.x, v.y, v.z};
            out.write(reinterpret_cast<const char*>(c), sizeof(c));
        }
        for (const auto& t : mesh.triangles) {
            uint8_t n = 3;
            int32_t idx[3] = {t[0], t[1], t[2]};
            out.write(reinterpret_cast<const char*>(&n), 1);
            out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace bimsem

#include "wscub/errors.hpp"
#include "wscub/surface_mesh.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <tuple>

namespace wscub {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
            ++pos;
        }
        if (pos > start) {
            out.push_back(line.substr(start, pos - start));
        }
    }
    return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line) {
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("malformed number '" + std::string(token) + "'", line);
    }
    return value;
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    /// Next line split into tokens; empty optional at end of input.
    bool next(std::vector<std::string_view>& tokens) {
        while (std::getline(in_, current_)) {
            ++line_;
            tokens = split_ws(current_);
            if (!tokens.empty()) {
                return true;
            }
        }
        return false;
    }
    std::size_t line() const { return line_; }

private:
    std::istringstream in_;
    std::string current_;
    std::size_t line_ = 0;
};

void append_double(std::string& out, double v) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'", 0);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string mesh_to_string(const TriangulatedSurface& mesh) {
    std::string out = "wsmesh 1\n";
    out += std::to_string(mesh.vertices.size()) + " " + std::to_string(mesh.triangles.size()) + "\n";
    for (const Vec3& v : mesh.vertices) {
        out += "v ";
        append_double(out, v.x);
        out += ' ';
        append_double(out, v.y);
        out += ' ';
        append_double(out, v.z);
        out += '\n';
    }
    for (const TriangleIndices& t : mesh.triangles) {
        out += "t " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
    }
    return out;
}

void mesh_io_write(const TriangulatedSurface& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << mesh_to_string(mesh);
}

TriangulatedSurface mesh_from_string(const std::string& text) {
    LineReader reader(text);
    std::vector<std::string_view> tok;
    if (!reader.next(tok)) {
        throw ParseError("empty mesh file", 0);
    }
    if (tok.size() != 2 || tok[0] != "wsmesh" || tok[1] != "1") {
        throw ParseError("expected header 'wsmesh 1'", reader.line());
    }
    if (!reader.next(tok) || tok.size() != 2) {
        throw ParseError("expected '<vertex_count> <triangle_count>'", reader.line());
    }
    const auto nv = parse_number<std::size_t>(tok[0], reader.line());
    const auto nt = parse_number<std::size_t>(tok[1], reader.line());
    std::vector<Vec3> vertices;
    std::vector<TriangleIndices> triangles;
    vertices.reserve(nv);
    triangles.reserve(nt);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!reader.next(tok)) {
            throw ParseError("expected " + std::to_string(nv) + " vertices, found " + std::to_string(i), 0);
        }
        if (tok.size() != 4 || tok[0] != "v") {
            throw ParseError("expected vertex line 'v x y z'", reader.line());
        }
        vertices.push_back({parse_number<double>(tok[1], reader.line()), parse_number<double>(tok[2], reader.line()),
                            parse_number<double>(tok[3], reader.line())});
    }
    for (std::size_t i = 0; i < nt; ++i) {
        if (!reader.next(tok)) {
            throw ParseError("expected " + std::to_string(nt) + " triangles, found " + std::to_string(i), 0);
        }
        if (tok.size() != 4 || tok[0] != "t") {
            throw ParseError("expected triangle line 't i j k'", reader.line());
        }
        TriangleIndices tri{};
        for (int c = 0; c < 3; ++c) {
            tri[c] = parse_number<std::size_t>(tok[c + 1], reader.line());
            if (tri[c] >= nv) {
                throw ParseError("triangle index " + std::to_string(tri[c]) + " out of range", reader.line());
            }
        }
        triangles.push_back(tri);
    }
    if (reader.next(tok)) {
        throw ParseError("unexpected trailing content", reader.line());
    }
    return make_surface(std::move(vertices), std::move(triangles));
}

TriangulatedSurface mesh_io_read(const std::string& path) { return mesh_from_string(read_file(path)); }

TriangulatedSurface mesh_from_triangle_soup(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::map<std::tuple<double, double, double>, std::size_t> index;
    std::vector<Vec3> vertices;
    std::vector<TriangleIndices> triangles;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const auto tok = split_ws(std::string_view(line).substr(0, hash));
        if (tok.empty()) {
            continue;
        }
        if (tok.size() != 9) {
            throw ParseError("triangle soup lines need nine coordinates", line_no);
        }
        TriangleIndices tri{};
        for (int c = 0; c < 3; ++c) {
            const Vec3 p{parse_number<double>(tok[3 * c], line_no), parse_number<double>(tok[3 * c + 1], line_no),
                         parse_number<double>(tok[3 * c + 2], line_no)};
            const auto [it, inserted] = index.try_emplace({p.x, p.y, p.z}, vertices.size());
            if (inserted) {
                vertices.push_back(p);
            }
            tri[c] = it->second;
        }
        triangles.push_back(tri);
    }
    if (triangles.empty()) {
        throw ParseError("triangle soup is empty", 0);
    }
    return make_surface(std::move(vertices), std::move(triangles));
}

} // namespace wscub

// Copyright 2026 The Sketchanim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sketchanim/svg.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/text.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace sketchanim {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorCode::MalformedSvg, "malformed SVG: " + what);
}

[[noreturn]] void unsupported(const std::string& what) {
    throw Error(ErrorCode::UnsupportedCommand, "unsupported SVG content: " + what);
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

// ---------------------------------------------------------------------------
// Path data

class PathLexer {
public:
    explicit PathLexer(std::string_view d)
        : d_(d) {
    }

    void skip_separators() {
        while (pos_ < d_.size() && (is_space(d_[pos_]) || d_[pos_] == ',')) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_separators();
        return pos_ >= d_.size();
    }

    bool at_number() {
        skip_separators();
        if (pos_ >= d_.size()) {
            return false;
        }
        const char c = d_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }

    char command() {
        skip_separators();
        const char c = d_[pos_];
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            malformed(std::string("expected a path command, found '") + c + "'");
        }
        ++pos_;
        return c;
    }

    double number() {
        skip_separators();
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t from = pos_;
            while (pos_ < d_.size() && std::isdigit(static_cast<unsigned char>(d_[pos_]))) {
                ++pos_;
            }
            return pos_ > from;
        };
        if (pos_ < d_.size() && (d_[pos_] == '-' || d_[pos_] == '+')) {
            ++pos_;
        }
        bool any = digits();
        if (pos_ < d_.size() && d_[pos_] == '.') {
            ++pos_;
            any = digits() || any;
        }
        if (!any) {
            malformed("bad number in path data at offset " + std::to_string(start));
        }
        if (pos_ < d_.size() && (d_[pos_] == 'e' || d_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < d_.size() && (d_[pos_] == '-' || d_[pos_] == '+')) {
                ++pos_;
            }
            if (!digits()) {
                pos_ = mark; // 'e' belongs to something else
            }
        }
        const auto value = parse_number(d_.substr(start, pos_ - start));
        if (!value || !std::isfinite(*value)) {
            malformed("bad number in path data at offset " + std::to_string(start));
        }
        return *value;
    }

    Point2 point() {
        const double x = number();
        const double y = number();
        return {x, y};
    }

private:
    std::string_view d_;
    std::size_t pos_ = 0;
};

CubicBezier line_as_cubic(const Point2& a, const Point2& b) {
    const Point2 step = b - a;
    return {{a, a + step * (1.0 / 3.0), a + step * (2.0 / 3.0), b}};
}

void parse_path_data(std::string_view d, const StrokeStyle& style, SketchFrame& out) {
    PathLexer lex(d);
    Point2 current;
    Point2 start;
    bool have_current = false;
    auto emit = [&](const CubicBezier& c) {
        out.strokes.push_back(c);
        out.styles.push_back(style);
    };

    while (!lex.at_end()) {
        const char cmd = lex.command();
        const bool relative = std::islower(static_cast<unsigned char>(cmd));
        const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(cmd)));
        if (!have_current && upper != 'M') {
            malformed(std::string("path must start with a moveto, found '") + cmd + "'");
        }
        switch (upper) {
        case 'M': {
            Point2 p = lex.point();
            if (relative && have_current) {
                p += current;
            }
            current = start = p;
            have_current = true;
            while (lex.at_number()) {
                Point2 q = lex.point();
                if (relative) {
                    q += current;
                }
                emit(line_as_cubic(current, q));
                current = q;
            }
            break;
        }
        case 'L': {
            do {
                Point2 q = lex.point();
                if (relative) {
                    q += current;
                }
                emit(line_as_cubic(current, q));
                current = q;
            } while (lex.at_number());
            break;
        }
        case 'C': {
            do {
                std::array<Point2, 3> q{lex.point(), lex.point(), lex.point()};
                if (relative) {
                    for (Point2& p : q) {
                        p += current;
                    }
                }
                emit({{current, q[0], q[1], q[2]}});
                current = q[2];
            } while (lex.at_number());
            break;
        }
        case 'Z': {
            if (current != start) {
                emit(line_as_cubic(current, start));
            }
            current = start;
            break;
        }
        default:
            unsupported(std::string("path command '") + cmd + "'");
        }
    }
}

// ---------------------------------------------------------------------------
// Minimal XML scanning: enough to walk elements and their attributes.

struct Tag {
    std::string name;
    std::map<std::string, std::string> attributes;
    bool closing = false;
    bool self_closing = false;
};

class XmlScanner {
public:
    explicit XmlScanner(std::string_view text)
        : s_(text) {
    }

    // Next tag, skipping text, comments, declarations and CDATA.
    std::optional<Tag> next() {
        while (true) {
            const std::size_t lt = s_.find('<', pos_);
            if (lt == std::string_view::npos) {
                pos_ = s_.size();
                return std::nullopt;
            }
            pos_ = lt;
            if (starts_with("<!--")) {
                skip_past("-->");
            } else if (starts_with("<![CDATA[")) {
                skip_past("]]>");
            } else if (starts_with("<?")) {
                skip_past("?>");
            } else if (starts_with("<!")) {
                skip_past(">");
            } else {
                return tag();
            }
        }
    }

private:
    bool starts_with(std::string_view prefix) const {
        return s_.substr(pos_, prefix.size()) == prefix;
    }

    void skip_past(std::string_view terminator) {
        const std::size_t end = s_.find(terminator, pos_);
        if (end == std::string_view::npos) {
            malformed("unterminated markup");
        }
        pos_ = end + terminator.size();
    }

    void skip_space() {
        while (pos_ < s_.size() && is_space(s_[pos_])) {
            ++pos_;
        }
    }

    std::string name() {
        const std::size_t start = pos_;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (is_space(c) || c == '>' || c == '/' || c == '=' || c == '<' || c == '"' || c == '\'') {
                break;
            }
            ++pos_;
        }
        if (pos_ == start) {
            malformed("expected a name at offset " + std::to_string(start));
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    Tag tag() {
        Tag t;
        ++pos_; // '<'
        if (pos_ < s_.size() && s_[pos_] == '/') {
            t.closing = true;
            ++pos_;
        }
        t.name = name();
        while (true) {
            skip_space();
            if (pos_ >= s_.size()) {
                malformed("unterminated tag <" + t.name + ">");
            }
            const char c = s_[pos_];
            if (c == '>') {
                ++pos_;
                return t;
            }
            if (c == '/' && !t.closing) {
                if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != '>') {
                    malformed("stray '/' in tag <" + t.name + ">");
                }
                pos_ += 2;
                t.self_closing = true;
                return t;
            }
            if (t.closing) {
                malformed("attributes in closing tag </" + t.name + ">");
            }
            std::string key = name();
            skip_space();
            if (pos_ >= s_.size() || s_[pos_] != '=') {
                malformed("attribute '" + key + "' has no value");
            }
            ++pos_;
            skip_space();
            if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) {
                malformed("attribute '" + key + "' is not quoted");
            }
            const char quote = s_[pos_++];
            const std::size_t end = s_.find(quote, pos_);
            if (end == std::string_view::npos) {
                malformed("unterminated attribute '" + key + "'");
            }
            t.attributes[key] = std::string(s_.substr(pos_, end - pos_));
            pos_ = end + 1;
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

bool is_unsupported_shape(const std::string& name) {
    static const std::array<std::string_view, 9> shapes{
        "rect", "circle", "ellipse", "line", "polyline", "polygon", "text", "image", "use"};
    return std::find(shapes.begin(), shapes.end(), name) != shapes.end();
}

bool is_non_rendered_container(const std::string& name) {
    static const std::array<std::string_view, 7> containers{
        "defs", "clipPath", "mask", "symbol", "marker", "pattern", "metadata"};
    return std::find(containers.begin(), containers.end(), name) != containers.end();
}

bool is_canvas_viewbox(const std::string& value) {
    std::istringstream in(value);
    std::array<std::string, 4> parts;
    for (auto& p : parts) {
        in >> p;
    }
    std::string extra;
    if (in >> extra) {
        return false;
    }
    std::array<double, 4> v{};
    for (int i = 0; i < 4; ++i) {
        std::string s = parts[i];
        if (!s.empty() && s.back() == ',') {
            s.pop_back();
        }
        const auto n = parse_number(s);
        if (!n) {
            return false;
        }
        v[i] = *n;
    }
    return v == std::array<double, 4>{0.0, 0.0, kCanvasSize, kCanvasSize};
}

StrokeStyle style_from(const Tag& tag, const StrokeStyle& inherited) {
    StrokeStyle style = inherited;
    if (auto it = tag.attributes.find("stroke"); it != tag.attributes.end()) {
        style.color = it->second;
    }
    if (auto it = tag.attributes.find("stroke-width"); it != tag.attributes.end()) {
        std::string w = it->second;
        if (w.size() > 2 && w.ends_with("px")) {
            w.resize(w.size() - 2);
        }
        if (const auto v = parse_number(w); v && *v >= 0.0 && std::isfinite(*v)) {
            style.width = *v;
        }
    }
    return style;
}

} // namespace

SketchFrame normalize_to_canvas(const SketchFrame& frame) {
    std::vector<Point2> pts = frame.points();
    if (pts.empty()) {
        return frame;
    }
    double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
    for (const Point2& p : pts) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    const double extent = std::max(hi_x - lo_x, hi_y - lo_y);
    const double scale = extent > 0.0 ? kCanvasSize * (1.0 - 2.0 * kCanvasMargin) / extent : 1.0;
    const Point2 mid{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
    const Point2 center{0.5 * kCanvasSize, 0.5 * kCanvasSize};
    for (Point2& p : pts) {
        p = center + scale * (p - mid);
    }
    return SketchFrame::from_points(pts, frame.styles);
}

SketchFrame parse_svg(std::string_view text, const SvgParseOptions& options) {
    XmlScanner scanner(text);
    std::vector<std::string> open;
    std::vector<StrokeStyle> styles{StrokeStyle{}};
    int hidden_depth = 0;
    bool seen_root = false;
    bool root_closed = false;
    bool canvas_viewbox = false;
    SketchFrame frame;

    while (auto tag = scanner.next()) {
        if (tag->closing) {
            if (open.empty() || open.back() != tag->name) {
                malformed("unexpected closing tag </" + tag->name + ">");
            }
            if (is_non_rendered_container(tag->name)) {
                --hidden_depth;
            }
            open.pop_back();
            styles.pop_back();
            if (open.empty()) {
                root_closed = true;
            }
            continue;
        }
        if (!seen_root) {
            if (tag->name != "svg") {
                malformed("root element is <" + tag->name + ">, expected <svg>");
            }
            seen_root = true;
            if (auto it = tag->attributes.find("viewBox"); it != tag->attributes.end()) {
                canvas_viewbox = is_canvas_viewbox(it->second);
            }
        } else if (root_closed) {
            malformed("content after the root element");
        }

        if (hidden_depth == 0) {
            if (tag->attributes.contains("transform")) {
                unsupported("transform attribute on <" + tag->name + ">");
            }
            if (is_unsupported_shape(tag->name)) {
                unsupported("element <" + tag->name + ">");
            }
            if (tag->name == "path") {
                const auto d = tag->attributes.find("d");
                if (d == tag->attributes.end()) {
                    malformed("<path> without a 'd' attribute");
                }
                parse_path_data(d->second, style_from(*tag, styles.back()), frame);
            }
        }
        if (!tag->self_closing) {
            if (is_non_rendered_container(tag->name)) {
                ++hidden_depth;
            }
            open.push_back(tag->name);
            styles.push_back(style_from(*tag, styles.back()));
        } else if (open.empty()) {
            root_closed = true;
        }
    }
    if (!seen_root) {
        malformed("no <svg> element");
    }
    if (!open.empty()) {
        malformed("unclosed element <" + open.back() + ">");
    }
    if (frame.strokes.empty()) {
        throw Error(ErrorCode::EmptySketch, "SVG contains no drawable path segments");
    }

    const bool verbatim = options.canvas == CanvasMode::Verbatim
                          || (options.canvas == CanvasMode::Auto && canvas_viewbox);
    return verbatim ? frame : normalize_to_canvas(frame);
}

SketchFrame parse_svg_file(const std::filesystem::path& path, const SvgParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_svg(buf.str(), options);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::string write_svg(const SketchFrame& frame) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"256\" height=\"256\" viewBox=\"0 0 256 256\">\n";
    for (std::size_t s = 0; s < frame.strokes.size(); ++s) {
        const StrokeStyle style = frame.styles.empty() ? StrokeStyle{} : frame.styles[s];
        const auto& c = frame.strokes[s].control;
        out += "  <path d=\"M ";
        out += format_number(c[0].x) + ' ' + format_number(c[0].y) + " C";
        for (int j = 1; j < 4; ++j) {
            out += ' ' + format_number(c[j].x) + ' ' + format_number(c[j].y);
        }
        out += "\" fill=\"none\" stroke=\"" + style.color + "\" stroke-width=\"" + format_number(style.width)
               + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_svg_file(const std::filesystem::path& path, const SketchFrame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    out << write_svg(frame);
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing " + path.string());
    }
}

} // namespace sketchanim

#include "wnnsel/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace wnnsel {

namespace detail {

std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_number) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(ch);
            }
        } else {
            if (ch == '"') {
                if (!current.empty()) {
                    fail(ErrorCode::parse, "line " + std::to_string(line_number) +
                                               ": quote inside unquoted field");
                }
                in_quotes = true;
            } else if (ch == ',') {
                fields.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(ch);
            }
        }
        ++i;
    }
    if (in_quotes) {
        fail(ErrorCode::parse,
             "line " + std::to_string(line_number) + ": unterminated quoted field");
    }
    fields.push_back(std::move(current));
    return fields;
}

}  // namespace detail

namespace {

std::string quote_field(const std::string& value) {
    const bool needs_quotes = value.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return value;
    std::string out = "\"";
    for (const char ch : value) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += "\"";
    return out;
}

std::optional<Code> parse_code(const std::string& token) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    return static_cast<Code>(value);
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

CategoricalMatrix read_csv(const std::string& path,
                           const std::optional<std::vector<AttributeSpec>>& schema,
                           const std::string& missing_token) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open '" + path + "' for reading");

    std::string line;
    std::size_t line_number = 0;

    // Skip leading comment lines, then take the header.
    std::optional<std::vector<std::string>> header;
    while (std::getline(in, line)) {
        ++line_number;
        line = strip_cr(line);
        if (!line.empty() && line[0] == '#') continue;
        header = detail::split_csv_record(line, line_number);
        break;
    }
    if (!header) fail(ErrorCode::parse, "'" + path + "': empty file");

    const std::size_t p = header->size();
    if (schema && schema->size() != p) {
        fail(ErrorCode::schema, "'" + path + "': schema has " + std::to_string(schema->size()) +
                                    " columns, file has " + std::to_string(p));
    }

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        ++line_number;
        line = strip_cr(line);
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        auto fields = detail::split_csv_record(line, line_number);
        if (fields.size() != p) {
            fail(ErrorCode::parse, "'" + path + "' line " + std::to_string(line_number) + ": " +
                                       std::to_string(fields.size()) + " fields, expected " +
                                       std::to_string(p));
        }
        rows.push_back(std::move(fields));
    }
    const std::size_t n = rows.size();

    std::vector<AttributeSpec> attrs;
    std::vector<std::unordered_map<std::string, Code>> token_code(p);

    if (schema) {
        attrs = *schema;
        for (std::size_t s = 0; s < p; ++s) {
            if (attrs[s].name.empty()) attrs[s].name = (*header)[s];
            attrs[s].validate();
            for (std::size_t c = 0; c < attrs[s].labels.size(); ++c) {
                token_code[s][attrs[s].labels[c]] = static_cast<Code>(c + 1);
            }
        }
    } else {
        attrs.resize(p);
        for (std::size_t s = 0; s < p; ++s) attrs[s].name = (*header)[s];
    }

    std::vector<Code> coded(n * p, kMissing);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < p; ++s) {
            const std::string& token = rows[i][s];
            if (token == missing_token) continue;
            if (schema) {
                Code code = kMissing;
                if (!attrs[s].labels.empty()) {
                    const auto it = token_code[s].find(token);
                    if (it == token_code[s].end()) {
                        fail(ErrorCode::schema, "'" + path + "' row " + std::to_string(i + 1) +
                                                    " column '" + attrs[s].name + "': token '" +
                                                    token + "' not in schema labels");
                    }
                    code = it->second;
                } else {
                    const auto parsed = parse_code(token);
                    if (!parsed || *parsed < 1 ||
                        static_cast<std::size_t>(*parsed) > attrs[s].num_categories) {
                        fail(ErrorCode::schema, "'" + path + "' row " + std::to_string(i + 1) +
                                                    " column '" + attrs[s].name + "': token '" +
                                                    token + "' is not a code in 1.." +
                                                    std::to_string(attrs[s].num_categories));
                    }
                    code = *parsed;
                }
                coded[i * p + s] = code;
            } else {
                auto [it, inserted] = token_code[s].try_emplace(
                    token, static_cast<Code>(token_code[s].size() + 1));
                if (inserted) attrs[s].labels.push_back(token);
                coded[i * p + s] = it->second;
            }
        }
    }

    if (!schema) {
        for (std::size_t s = 0; s < p; ++s) {
            attrs[s].num_categories = attrs[s].labels.size();
            if (attrs[s].num_categories < 2) {
                fail(ErrorCode::degenerate_column,
                     "'" + path + "' column '" + attrs[s].name + "': " +
                         std::to_string(attrs[s].num_categories) +
                         " distinct observed values; at least 2 required");
            }
        }
    }

    CategoricalMatrix z(attrs, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < p; ++s) {
            z.set(i, s, coded[i * p + s]);
        }
    }
    return z;
}

void write_csv(const CategoricalMatrix& z, const std::string& path,
               const std::string& missing_token, const std::string& comment_header) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");

    if (!comment_header.empty()) {
        std::istringstream lines(comment_header);
        std::string hline;
        while (std::getline(lines, hline)) out << "# " << hline << "\n";
    }

    for (std::size_t s = 0; s < z.cols(); ++s) {
        if (s) out << ',';
        out << quote_field(z.attribute(s).name);
    }
    out << "\n";

    for (std::size_t i = 0; i < z.rows(); ++i) {
        for (std::size_t s = 0; s < z.cols(); ++s) {
            if (s) out << ',';
            const Code v = z.at(i, s);
            if (v == kMissing) {
                out << quote_field(missing_token);
            } else if (!z.attribute(s).labels.empty()) {
                out << quote_field(z.attribute(s).labels[static_cast<std::size_t>(v - 1)]);
            } else {
                out << v;
            }
        }
        out << "\n";
    }
    if (!out) fail(ErrorCode::io, "write failed for '" + path + "'");
}

std::vector<AttributeSpec> read_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open schema '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, "schema '" + path + "': " + e.what());
    }
    if (!doc.contains("columns") || !doc["columns"].is_array()) {
        fail(ErrorCode::schema, "schema '" + path + "': missing \"columns\" array");
    }
    std::vector<AttributeSpec> out;
    for (const auto& col : doc["columns"]) {
        AttributeSpec spec;
        spec.name = col.value("name", "");
        spec.num_categories = col.value("num_categories", std::size_t{0});
        if (col.contains("labels")) {
            spec.labels = col["labels"].get<std::vector<std::string>>();
            if (spec.num_categories == 0) spec.num_categories = spec.labels.size();
        }
        spec.validate();
        out.push_back(std::move(spec));
    }
    if (out.empty()) fail(ErrorCode::schema, "schema '" + path + "': no columns");
    return out;
}

void write_schema(const std::vector<AttributeSpec>& schema, const std::string& path) {
    nlohmann::json doc;
    doc["columns"] = nlohmann::json::array();
    for (const auto& spec : schema) {
        nlohmann::json col;
        col["name"] = spec.name;
        col["num_categories"] = spec.num_categories;
        if (!spec.labels.empty()) col["labels"] = spec.labels;
        doc["columns"].push_back(std::move(col));
    }
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open schema '" + path + "' for writing");
    out << doc.dump(2) << "\n";
}

}  // namespace wnnsel

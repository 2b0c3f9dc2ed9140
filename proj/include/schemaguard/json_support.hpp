// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

#include "schemaguard/error.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace schemaguard::detail {

using json = nlohmann::ordered_json;

inline std::string line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json_text(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::string msg = e.what();
        // nlohmann prefixes "[json.exception.parse_error.101] parse error at line ..."
        if (auto pos = msg.find("] "); pos != std::string::npos)
            msg = msg.substr(pos + 2);
        throw ParseError(line_column(text, e.byte), "malformed document: " + msg);
    }
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string field_path(const std::string &parent, std::string_view key)
{
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

inline std::string index_path(const std::string &parent, std::size_t i)
{
    return parent + "[" + std::to_string(i) + "]";
}

inline const json &require(const json &obj, std::string_view key, const std::string &path)
{
    if (!obj.is_object())
        throw ParseError(path, "expected an object");
    auto it = obj.find(std::string(key));
    if (it == obj.end())
        throw ParseError(field_path(path, key), "missing required field");
    return *it;
}

inline std::string require_string(const json &obj, std::string_view key, const std::string &path)
{
    const json &v = require(obj, key, path);
    if (!v.is_string())
        throw ParseError(field_path(path, key), "expected a string");
    return v.get<std::string>();
}

inline long long require_integer(const json &v, const std::string &path)
{
    if (!v.is_number_integer())
        throw ParseError(path, "expected an integer");
    return v.get<long long>();
}

inline const json &require_array(const json &obj, std::string_view key, const std::string &path)
{
    const json &v = require(obj, key, path);
    if (!v.is_array())
        throw ParseError(field_path(path, key), "expected an array");
    return v;
}

/// Two-space indentation, LF line endings, trailing newline.
inline std::string dump_canonical(const json &doc)
{
    return doc.dump(2) + "\n";
}

} // namespace schemaguard::detail

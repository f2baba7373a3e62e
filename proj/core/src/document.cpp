#include <cctype>
#include <optional>

#include "bibforge/cite.hpp"

namespace bibforge {

namespace {

bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
           c == '/' || c == '.' || c == '+' || c == '-';
}

std::vector<std::string> split_keys_list(const std::string& text) {
    std::vector<std::string> out;
    for (const std::string& part : split(text, ',')) {
        std::string key = trim(part);
        if (!key.empty()) out.push_back(key);
    }
    return out;
}

std::string link_citation(const std::string& text, const std::vector<std::string>& keys,
                          const Bibliography& bib, const ConfigOptions& config) {
    if (config.hyperlink == HyperlinkMode::Off || keys.empty()) return text;
    std::string target;
    if (config.hyperlink == HyperlinkMode::ToBib ||
        config.hyperlink == HyperlinkMode::ToDoc) {
        target = "#bib-" + keys.front();
    } else {
        const BibRecord* rec = bib.find_key(keys.front());
        if (!rec) return text;
        auto url = hyperlink_target(*rec);
        if (!url) return text;
        target = *url;
    }
    if (config.style == OutputFormat::Html)
        return "<a href=\"" + target + "\">" + text + "</a>";
    return "[" + text + "](" + target + ")";
}

}  // namespace

ProcessedDocument process_document(const std::string& text, const Bibliography& bib,
                                   const ConfigOptions& config) {
    CiteState state;
    std::string out;
    out.reserve(text.size());
    std::optional<std::size_t> placeholder_pos;

    std::size_t i = 0;
    const std::string nocite_open = "<!--nocite:";
    const std::string placeholder = "[[bibliography]]";
    while (i < text.size()) {
        if (text.compare(i, placeholder.size(), placeholder) == 0) {
            placeholder_pos = out.size();
            i += placeholder.size();
            continue;
        }
        if (text.compare(i, nocite_open.size(), nocite_open) == 0) {
            std::size_t end = text.find("-->", i);
            if (end != std::string::npos) {
                std::string body =
                    text.substr(i + nocite_open.size(), end - i - nocite_open.size());
                for (const std::string& key : split_keys_list(body))
                    if (bib.find_key(key)) state.add_nocited(key);
                i = end + 3;
                continue;
            }
        }
        if (text[i] == '[' && i + 1 < text.size() &&
            (text[i + 1] == '@' || (text[i + 1] == '-' && i + 2 < text.size() &&
                                    text[i + 2] == '@'))) {
            std::size_t end = text.find(']', i);
            if (end != std::string::npos) {
                std::string body = text.substr(i + 1, end - i - 1);
                std::vector<std::string> keys;
                bool saw_directive = false;
                for (std::string part : split(body, ';')) {
                    part = trim(part);
                    bool is_nocite = !part.empty() && part[0] == '-';
                    if (is_nocite) part = trim(part.substr(1));
                    if (part.empty() || part[0] != '@') continue;
                    std::string key = trim(part.substr(1));
                    if (!bib.find_key(key))
                        throw BibError("UnknownKey",
                                       "no entry with key '" + key + "'");
                    saw_directive = true;
                    if (is_nocite)
                        state.add_nocited(key);
                    else
                        keys.push_back(key);
                }
                if (!keys.empty()) {
                    std::string rendered = cite(state, bib, keys,
                                                CiteMode::Parenthetical, config);
                    out += link_citation(rendered, keys, bib, config);
                } else if (!saw_directive) {
                    out += text.substr(i, end - i + 1);
                }
                i = end + 1;
                continue;
            }
        }
        if (text[i] == '@' && i + 1 < text.size() && key_char(text[i + 1]) &&
            (i == 0 || !key_char(text[i - 1]))) {
            std::size_t j = i + 1;
            while (j < text.size() && key_char(text[j])) ++j;
            std::string key = text.substr(i + 1, j - i - 1);
            if (bib.find_key(key)) {
                std::string rendered =
                    cite(state, bib, std::vector<std::string>{key}, CiteMode::Textual,
                         config);
                out += link_citation(rendered, {key}, bib, config);
                i = j;
                continue;
            }
        }
        out.push_back(text[i]);
        ++i;
    }

    ProcessedDocument doc;
    doc.bibliography_block = print_bibliography(state, bib, config);
    if (placeholder_pos) {
        out.insert(*placeholder_pos, doc.bibliography_block);
    } else if (!doc.bibliography_block.empty()) {
        if (!out.empty() && out.back() != '\n') out += "\n";
        out += "\n" + doc.bibliography_block + "\n";
    }
    doc.text = std::move(out);
    return doc;
}

}  // namespace bibforge

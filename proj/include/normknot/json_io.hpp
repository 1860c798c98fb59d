#ifndef NORMKNOT_JSON_IO_HPP
#define NORMKNOT_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "normknot/gl2.hpp"
#include "normknot/group.hpp"

namespace normknot {

// Group files: { "degree": n, "generators": [[1-based images], ...] }.
// Emitted subgroups carry an "order" field as well.

struct GroupInput {
    GroupTable group;
    std::optional<Point> stabilizer_point;  // 0-based internally
};

Perm perm_from_json(const nlohmann::json& j, std::size_t degree);
nlohmann::json perm_to_json(const Perm& p);  // 1-based image array

GroupInput group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const GroupTable& g, bool with_order = true);

// { "p": p, "source": group-JSON, "images": [[a,b,c,d], ...] } aligned with
// the source generators
nlohmann::json rep_to_json(const Rep2& rep);
Rep2 rep_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace normknot

#endif

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "ufc/cli/parser.hpp"
#include "ufc/filter/filter_base.hpp"
#include "ufc/setalg/set_expr.hpp"

namespace ufc::cli {

enum class Status { Decided = 0, Error = 1, Unknown = 2 };

/// The worse of two statuses: Error over Unknown over Decided.
Status combine(Status a, Status b);

struct Result {
    nlohmann::ordered_json doc;
    Status status = Status::Decided;
};

/// Named sets and filter bases plus evaluation settings. Names bind once.
class Session {
public:
    using Binding = std::variant<SetExpr, BaseRef>;

    explicit Session(Config cfg = {}) : cfg_(cfg) {}

    Config& config() noexcept { return cfg_; }
    const Config& config() const noexcept { return cfg_; }
    /// Members listed by the oracle command.
    std::size_t display_cap = 50;

    /// Parses and runs one line; blank lines give nullopt. Errors of any
    /// kind become documents with status Error.
    std::optional<Result> run_line(std::string_view line, std::size_t lineno = 1);
    Result run(const Command& c);

    bool bound(const std::string& name) const { return bindings_.count(name) != 0; }

private:
    SetExpr resolve(const SetNode& n) const;
    BaseRef resolve(const PointNode& p) const;
    BaseRef build(const FilterNode& f) const;

    Config cfg_;
    std::map<std::string, Binding> bindings_;
};

/// A set node rebuilt as a SetExpr with names looked up in `lookup`.
SetExpr to_expr(const SetNode& n, const std::function<SetExpr(const SetNode&)>& lookup);

}  // namespace ufc::cli

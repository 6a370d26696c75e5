#include "cfi/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace cfi {
namespace {

std::string cell_key(const std::string& entity, int year, const std::string& indicator) {
    std::ostringstream os;
    os << "(entity " << entity << ", year " << year << ", indicator " << indicator << ")";
    return os.str();
}

}  // namespace

PanelDataset validate_dataset(const std::vector<RawRecord>& records,
                              const HierarchySpec& hierarchy) {
    hierarchy.validate();

    const std::vector<std::string> order = hierarchy.indicator_order();
    std::map<std::string, Eigen::Index> indicator_index;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(order.size()); ++j)
        indicator_index[order[static_cast<std::size_t>(j)]] = j;

    std::set<std::string> entity_set;
    std::set<int> year_set;
    for (const auto& rec : records) {
        if (indicator_index.find(rec.indicator) == indicator_index.end())
            throw Error(ErrorCode::UnknownIndicator,
                        "unknown indicator " + cell_key(rec.entity, rec.year, rec.indicator));
        if (!std::isfinite(rec.value))
            throw Error(ErrorCode::NonFiniteValue,
                        "non-finite value " + cell_key(rec.entity, rec.year, rec.indicator));
        entity_set.insert(rec.entity);
        year_set.insert(rec.year);
    }
    if (records.empty())
        throw Error(ErrorCode::MissingCell, "no records");

    PanelDataset ds;
    ds.entities.assign(entity_set.begin(), entity_set.end());
    ds.years.assign(year_set.begin(), year_set.end());
    for (const auto& id : order) ds.indicators.push_back(hierarchy.indicator(id));

    std::map<std::string, Eigen::Index> entity_index;
    for (Eigen::Index i = 0; i < ds.entity_count(); ++i)
        entity_index[ds.entities[static_cast<std::size_t>(i)]] = i;
    std::map<int, Eigen::Index> year_index;
    for (Eigen::Index t = 0; t < ds.year_count(); ++t)
        year_index[ds.years[static_cast<std::size_t>(t)]] = t;

    const Eigen::Index m = ds.entity_count();
    const Eigen::Index n = ds.indicator_count();
    ds.values.assign(static_cast<std::size_t>(ds.year_count()), Eigen::MatrixXd::Zero(m, n));
    std::vector<std::vector<char>> seen(
        static_cast<std::size_t>(ds.year_count()),
        std::vector<char>(static_cast<std::size_t>(m * n), 0));

    for (const auto& rec : records) {
        const Eigen::Index i = entity_index.at(rec.entity);
        const Eigen::Index j = indicator_index.at(rec.indicator);
        const Eigen::Index t = year_index.at(rec.year);
        char& flag = seen[static_cast<std::size_t>(t)][static_cast<std::size_t>(i * n + j)];
        if (flag != 0)
            throw Error(ErrorCode::DuplicateCell,
                        "duplicate cell " + cell_key(rec.entity, rec.year, rec.indicator));
        flag = 1;
        ds.values[static_cast<std::size_t>(t)](i, j) = rec.value;
    }

    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index t = 0; t < ds.year_count(); ++t)
            for (Eigen::Index j = 0; j < n; ++j)
                if (seen[static_cast<std::size_t>(t)][static_cast<std::size_t>(i * n + j)] == 0)
                    throw Error(ErrorCode::MissingCell,
                                "missing cell " +
                                    cell_key(ds.entities[static_cast<std::size_t>(i)],
                                             ds.years[static_cast<std::size_t>(t)],
                                             order[static_cast<std::size_t>(j)]));
    return ds;
}

PanelDataset apply_prep(const PanelDataset& ds) {
    PanelDataset out = ds;
    for (Eigen::Index j = 0; j < ds.indicator_count(); ++j) {
        if (ds.indicators[static_cast<std::size_t>(j)].prep != Prep::Reciprocal) continue;
        for (Eigen::Index t = 0; t < ds.year_count(); ++t) {
            for (Eigen::Index i = 0; i < ds.entity_count(); ++i) {
                const double x = ds.value(i, j, t);
                if (x <= 0.0)
                    throw Error(ErrorCode::NonPositiveReciprocal,
                                "reciprocal prep needs strictly positive values, got " +
                                    std::to_string(x) + " at " +
                                    cell_key(ds.entities[static_cast<std::size_t>(i)],
                                             ds.years[static_cast<std::size_t>(t)],
                                             ds.indicators[static_cast<std::size_t>(j)].id));
                out.values[static_cast<std::size_t>(t)](i, j) = 1.0 / x;
            }
        }
    }
    return out;
}

DecisionMatrix slice_year(const PanelDataset& ds, int year) {
    const auto it = std::find(ds.years.begin(), ds.years.end(), year);
    if (it == ds.years.end())
        throw Error(ErrorCode::UnknownYear, "year " + std::to_string(year) + " not in dataset");
    const auto t = static_cast<std::size_t>(it - ds.years.begin());

    DecisionMatrix mat;
    mat.entities = ds.entities;
    for (const auto& ind : ds.indicators) mat.indicators.push_back(ind.id);
    mat.stage = Stage::Raw;
    mat.cells = ds.values[t];
    return mat;
}

}  // namespace cfi

#pragma once

#include <map>
#include <memory>

#include "stpq/mvindex.hpp"
#include "stpq/query.hpp"

namespace stpq {

// One grid's worth of per-cell indexes under a single backend.
class CellIndex {
public:
    virtual ~CellIndex() = default;

    virtual const char* name() const = 0;
    virtual void apply(const CellId& cell, const CellEvent& event) = 0;
    virtual void finish() {}  // flush pending state after the last event

    // F(cell, T), sorted by object id.
    virtual std::vector<ObjectId> eval_predicate(const CellId& cell,
                                                 const TemporalConstraint& T) = 0;
    // Per-candidate check used when verifying the non-seed predicates.
    virtual bool verify(const CellId& cell, ObjectId object,
                        const TemporalConstraint& T) = 0;

    virtual std::size_t pages_total() const = 0;
};

// The multiversion-tree backend: one partially persistent B+-tree per cell.
class AdvancedIndex : public CellIndex {
public:
    AdvancedIndex(PageStore& store, mv::MvConfig cfg);

    const char* name() const override { return "advanced"; }
    void apply(const CellId& cell, const CellEvent& event) override;
    std::vector<ObjectId> eval_predicate(const CellId& cell,
                                         const TemporalConstraint& T) override;
    bool verify(const CellId& cell, ObjectId object,
                const TemporalConstraint& T) override;
    std::size_t pages_total() const override;

    mv::MvTree* tree(const CellId& cell);
    const std::map<std::pair<std::uint32_t, std::uint32_t>,
                   std::unique_ptr<mv::MvTree>>& trees() const {
        return trees_;
    }
    // Descent length for the version holding T's start, 0 for unknown cells.
    std::size_t height_for(const CellId& cell, const TemporalConstraint& T) const;

private:
    mv::MvTree& cell_tree(const CellId& cell);

    PageStore& store_;
    mv::MvConfig cfg_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<mv::MvTree>> trees_;
};

}  // namespace stpq

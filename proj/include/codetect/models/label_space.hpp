#pragma once

#include "codetect/corpus/sample.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codetect {

enum class Task { binary, attribution, ternary };

std::string_view to_string(Task t);
Task parse_task(std::string_view text);

/// Ordered class names for one task. Order breaks score ties and fixes the
/// confusion-matrix layout.
class LabelSpace {
public:
    LabelSpace() = default;
    LabelSpace(Task task, std::vector<std::string> labels);

    static LabelSpace binary();
    static LabelSpace ternary();
    /// human, then the five known generators, then any other generator tags
    /// seen in `samples`, sorted.
    static LabelSpace attribution(std::span<const CodeSample> samples = {});
    static LabelSpace for_task(Task task, std::span<const CodeSample> samples = {});

    Task task() const { return task_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    const std::string& name(std::size_t i) const { return labels_.at(i); }
    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws a validation error for labels outside the space.
    std::size_t index(std::string_view label) const;

    /// The sample's class under this task. Binary maps hybrid to llm;
    /// attribution names the generator.
    std::string gold_label(const CodeSample& s) const;

    friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

private:
    Task task_ = Task::binary;
    std::vector<std::string> labels_;
};

}  // namespace codetect

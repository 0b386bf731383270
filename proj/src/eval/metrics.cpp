#include "codetect/eval/metrics.hpp"

#include "codetect/common.hpp"

namespace codetect {

std::size_t ConfusionMatrix::total() const {
    std::size_t t = 0;
    for (auto c : counts_) t += c;
    return t;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < k_; ++i) t += at(i, i);
    return t;
}

std::size_t ConfusionMatrix::gold_count(std::size_t c) const {
    std::size_t t = 0;
    for (std::size_t p = 0; p < k_; ++p) t += at(c, p);
    return t;
}

std::size_t ConfusionMatrix::pred_count(std::size_t c) const {
    std::size_t t = 0;
    for (std::size_t g = 0; g < k_; ++g) t += at(g, c);
    return t;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
    if (o.k_ != k_) throw validation_error("confusion matrices of different sizes");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
    return *this;
}

ConfusionMatrix confusion(std::span<const std::size_t> preds, std::span<const std::size_t> golds, std::size_t classes) {
    if (preds.size() != golds.size()) {
        throw validation_error("predictions and gold labels differ in length (" + std::to_string(preds.size()) +
                               " vs " + std::to_string(golds.size()) + ")");
    }
    ConfusionMatrix cm(classes);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] >= classes || golds[i] >= classes) throw validation_error("label index outside the label space");
        cm.add(golds[i], preds[i]);
    }
    return cm;
}

std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& cm) {
    std::vector<ClassMetrics> out(cm.classes());
    for (std::size_t c = 0; c < cm.classes(); ++c) {
        auto& m = out[c];
        const auto tp = static_cast<double>(cm.at(c, c));
        const auto predicted = static_cast<double>(cm.pred_count(c));
        const auto gold = static_cast<double>(cm.gold_count(c));
        m.support = cm.gold_count(c);
        if (predicted > 0) m.precision = tp / predicted; else m.zero_division = true;
        if (gold > 0) m.recall = tp / gold; else m.zero_division = true;
        const double denom = predicted + gold;  // 2tp + fp + fn
        if (denom > 0) m.f1 = 2 * tp / denom; else m.zero_division = true;
    }
    return out;
}

Metrics macro_metrics(const ConfusionMatrix& cm) {
    Metrics m;
    m.n = cm.total();
    if (m.n == 0) throw validation_error("cannot compute metrics on zero predictions");
    const auto classes = per_class_metrics(cm);
    for (const auto& c : classes) {
        m.precision += c.precision;
        m.recall += c.recall;
        m.f1 += c.f1;
    }
    const auto k = static_cast<double>(classes.size());
    m.precision /= k;
    m.recall /= k;
    m.f1 /= k;
    m.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(m.n);
    std::size_t gold_classes = 0;
    for (std::size_t c = 0; c < cm.classes(); ++c) gold_classes += cm.gold_count(c) > 0 ? 1 : 0;
    m.single_class_gold = gold_classes == 1;
    return m;
}

Metrics macro_metrics(std::span<const std::size_t> preds, std::span<const std::size_t> golds, const LabelSpace& space) {
    if (preds.empty() && golds.empty()) throw validation_error("cannot compute metrics on zero predictions");
    return macro_metrics(confusion(preds, golds, space.size()));
}

}  // namespace codetect

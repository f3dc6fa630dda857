"""
Five ways to score the same predictions
=======================================

Token-level scoring answers "did we flag the right words"; entity-level
scoring answers "did we recover the exact spans". The five scenarios
differ only in how strict a match must be, so they always order
detection >= relaxed >= strict.
"""
from clindeid.ablation import evaluate_tagger
from clindeid.corpus import LabelSet, gold_sentences, split_corpus
from clindeid.crf import CrfConfig
from clindeid.evaluation import confusion_matrix
from clindeid.synthetic import GeneratorConfig, generate
from clindeid.systems import CrfSystem

labels = LabelSet()
documents = generate(GeneratorConfig(seed=5, n_documents=150))
split = split_corpus(documents, seed=0)
train = [s for d in split.train for s in gold_sentences(d, labels)]

crf = CrfSystem(config=CrfConfig(max_iterations=60), labels=labels)
crf.fit(train)

# evaluate_tagger scores all five scenarios over the held-out documents.
scores = evaluate_tagger(crf, split.test, labels)
print(f"{'scenario':<24} {'P':>7} {'R':>7} {'F1':>7} {'tp':>5} {'fp':>4} {'fn':>4}")
for scenario, m in scores.items():
    print(
        f"{scenario:<24} {m.precision:7.4f} {m.recall:7.4f} {m.f1:7.4f}"
        f" {m.tp:5d} {m.fp:4d} {m.fn:4d}"
    )

# A confusion matrix over token categories shows where the errors live;
# the trailing O row/column holds missed and spurious tokens.
gold_tags, pred_tags = [], []
for doc in split.test:
    sentences = list(gold_sentences(doc, labels))
    for sent, tags in zip(sentences, crf.tag(sentences)):
        gold_tags.extend(sent.gold)
        pred_tags.extend(tags)
matrix = confusion_matrix(gold_tags, pred_tags, labels)
print("\nrow-normalized confusion (gold rows, predicted columns):")
print(matrix.to_tsv())

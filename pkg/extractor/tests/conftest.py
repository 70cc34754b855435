import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "a", "plane", "pin", "landed", "fell", "on", "floor", "flew",
    "over", "city", "was", "bent", "small", "again", "and",
    "##s", "##ed", "##ing",
]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """A tiny randomly initialized BERT saved locally; no network needed."""
    model_dir = tmp_path_factory.mktemp("tiny-bert")
    vocab_path = model_dir / "vocab.txt"
    vocab_path.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    tokenizer = BertTokenizer(str(vocab_path))
    tokenizer.save_pretrained(model_dir)
    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    BertModel(config).save_pretrained(model_dir)
    return str(model_dir)


@pytest.fixture
def toy_corpus(tmp_path):
    """5 sentences, targets 'plane' (3 occurrences) and 'pin' (2, twice in one line)."""
    path = tmp_path / "corpus.txt"
    path.write_text(
        "the plane landed on the floor\n"
        "a pin fell and a pin was bent\n"
        "the plane flew over the city\n"
        "the small city was small again\n"
        "a plane again\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def targets_file(tmp_path):
    path = tmp_path / "targets.txt"
    path.write_text("plane\npin\n", encoding="utf-8")
    return path

"""Command line for occurrence extraction and sense-release conversion."""
import argparse
import os
import sys

from .convert import LAYOUTS, convert_sense_release
from .corpus import find_occurrences
from .embedder import POOLINGS, ExtractionConfig, embed_occurrences


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sscd-extract")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extract", help="embed target occurrences into an SSCD file")
    p_ext.add_argument("--model", required=True, help="pretrained MLM id or local path")
    p_ext.add_argument("--corpus", required=True, help="one pre-tokenized sentence per line")
    p_ext.add_argument("--targets", required=True, help="newline-separated target lemmas")
    p_ext.add_argument("--out", required=True, help="output .sscd path")
    p_ext.add_argument("--corpus-id", help="corpus id written to the header (default: corpus stem)")
    p_ext.add_argument("--pooling", choices=list(POOLINGS), default="mean-last")
    p_ext.add_argument("--max-len", type=int, default=256)
    p_ext.add_argument("--batch-size", type=int, default=16)
    p_ext.add_argument("--device", default="cpu")
    p_ext.add_argument("--duplicate-concat", action="store_true",
                       help="write [f; f] to align with concatenated sense releases")

    p_conv = sub.add_parser("convert", help="convert a text sense release to SSEB binary")
    p_conv.add_argument("--release", required=True, help="text release with '<count> <dim>' header")
    p_conv.add_argument("--out", required=True, help="output .sseb path")
    p_conv.add_argument("--layout", choices=list(LAYOUTS), default="plain")

    return parser


def cmd_extract(args) -> int:
    with open(args.targets, "r", encoding="utf-8") as f:
        targets = [line.strip() for line in f if line.strip()]
    occurrences, sentence_count = find_occurrences(args.corpus, targets)
    corpus_id = args.corpus_id or os.path.splitext(os.path.basename(args.corpus))[0]
    config = ExtractionConfig(
        model=args.model, pooling=args.pooling, max_len=args.max_len,
        batch_size=args.batch_size, device=args.device,
        duplicate_concat=args.duplicate_concat,
    )
    summary = embed_occurrences(config, args.corpus, corpus_id, occurrences,
                                sentence_count, args.out, sidecar_path=args.out + ".json")
    print(f"wrote {summary.written} occurrences (dim {summary.dim}, "
          f"{summary.skipped} skipped) -> {args.out}")
    return 0


def cmd_convert(args) -> int:
    info = convert_sense_release(args.release, args.out, args.layout,
                                 sidecar_path=args.out + ".json")
    print(f"converted {info['count']} senses (dim {info['dim']}, layout {info['layout']}) "
          f"-> {args.out}")
    if info["extractor_flag"]:
        print(f"note: extract with {info['extractor_flag']} so contextual vectors "
              f"match this release's layout")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return cmd_extract(args)
        return cmd_convert(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

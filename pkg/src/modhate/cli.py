"""Command-line pipeline: gen-demo | extract | select | train | evaluate | predict | report.

Conventions shared by the subcommands:

  * --out names a working directory; extract writes features/ under it and
    later stages read from there and add models/ and reports/.
  * every command writes the RunConfig it executed as run_config.<cmd>.json.
  * exit codes: 0 ok, 1 usage error, 2 data error, 3 internal failure.
  * MODHATE_THREADS caps per-sample extraction parallelism (results are
    ordered by manifest position either way, so output bytes never change).
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click
import numpy as np

from modhate import errors, tables
from modhate.audio_features import AUDIO_FEATURE_NAMES, FrameConfig, extract_audio_features
from modhate.classifiers import ALGORITHM_TAGS, Hyperparams, fit_pipeline
from modhate.classifiers import predict as model_predict
from modhate.errors import (
    DataError,
    IncompleteResultsError,
    ModhateError,
    TooFewSamplesError,
    UsageError,
)
from modhate.fusion_eval import (
    ModalityPredictions,
    build_report,
    confusion,
    hard_vote,
    parse_report_csv,
)
from modhate.image_features import IMAGE_FEATURE_NAMES, extract_image_features
from modhate.ingest import parse_manifest, read_wav, split_dataset
from modhate.model_io import load_model, save_model
from modhate.synthetic import SyntheticCorpusSpec, generate_demo_corpus
from modhate.text_features import (
    DEFAULT_STOPWORDS,
    Vocabulary,
    build_vocabulary,
    load_stopwords,
    normalize_and_tokenize,
    read_vocabulary,
    vectorize,
    write_vocabulary,
)
from modhate import feature_selection as fs

MODALITIES = ("image", "audio", "text")


def _threads() -> int:
    raw = os.environ.get("MODHATE_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"MODHATE_THREADS must be an integer, got {raw!r}")
    return min(4, os.cpu_count() or 1)


def _write_run_config(out_dir: Path, command: str, params: dict) -> None:
    doc = {"command": command, "params": params}
    path = out_dir / f"run_config.{command}.json"
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _labels_for(records, ids) -> np.ndarray:
    by_id = {r.id: r.label for r in records}
    return np.array([by_id[i] for i in ids], dtype=np.int64)


@click.group()
def cli():
    """Tri-modal (audio / image / text) hate-speech detection pipeline."""


@cli.command("gen-demo")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--seed", default=42, show_default=True)
@click.option("--count", default=300, show_default=True)
def cmd_gen_demo(out, seed, count):
    """Write a seeded synthetic demo corpus (60/40 hate ratio)."""
    spec = SyntheticCorpusSpec(n_samples=count, seed=seed)
    manifest = generate_demo_corpus(spec, out)
    _write_run_config(out, "gen-demo", {"seed": seed, "count": count})
    click.echo(f"wrote {count} samples, manifest at {manifest}")


@cli.command("extract")
@click.option("--manifest", "manifest_path", required=True, type=click.Path(path_type=Path))
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--seed", default=0, show_default=True, help="train/test split seed")
@click.option("--text-mode", type=click.Choice(["count", "tfidf"]), default="tfidf", show_default=True)
@click.option("--stopwords", "stopword_path", type=click.Path(path_type=Path), default=None)
def cmd_extract(manifest_path, out, seed, text_mode, stopword_path):
    """Extract per-modality feature CSVs, vocabulary, and the split file."""
    records = parse_manifest(manifest_path)
    split = split_dataset(records, seed=seed)
    out.mkdir(parents=True, exist_ok=True)
    feat_dir = out / "features"
    feat_dir.mkdir(exist_ok=True)
    stop = load_stopwords(stopword_path) if stopword_path else DEFAULT_STOPWORDS

    warnings: list[str] = []

    def audio_of(rec):
        return extract_audio_features(read_wav(rec.audio_path))

    def image_of(rec):
        return extract_image_features(rec.image_dir)

    def text_of(rec):
        try:
            raw = rec.text_path.read_text(encoding="utf-8")
        except OSError as e:
            raise errors.UnreadableFileError(f"cannot read {rec.text_path}: {e}") from e
        return normalize_and_tokenize(raw, stop)

    def run_stage(stage, fn):
        def safe(rec):
            try:
                return rec.id, fn(rec)
            except DataError as e:
                return rec.id, e
        n_threads = _threads()
        if n_threads > 1:
            with ThreadPoolExecutor(max_workers=n_threads) as pool:
                results = list(pool.map(safe, records))
        else:
            results = [safe(r) for r in records]
        good = []
        for sid, value in results:
            if isinstance(value, DataError):
                warnings.append(f"{sid},{stage},{value}")
            else:
                good.append((sid, value))
        return good

    audio_rows = run_stage("audio", audio_of)
    image_rows = run_stage("image", image_of)
    text_docs = run_stage("text", text_of)

    tables.write_feature_csv(feat_dir / "audio.csv", AUDIO_FEATURE_NAMES,
                             [sid for sid, _ in audio_rows],
                             np.array([v for _, v in audio_rows]) if audio_rows else np.empty((0, 33)))
    tables.write_feature_csv(feat_dir / "image.csv", IMAGE_FEATURE_NAMES,
                             [sid for sid, _ in image_rows],
                             np.array([v for _, v in image_rows]) if image_rows else np.empty((0, 2500)))

    # vocabulary from readable train-split documents only
    train_ids = set(split.train_ids)
    train_docs = [doc for sid, doc in text_docs if sid in train_ids]
    if not train_docs:
        raise TooFewSamplesError("no readable training transcripts")
    vocab = build_vocabulary(train_docs)
    write_vocabulary(vocab, feat_dir / "vocabulary.csv")
    text_names = [f"t_{t}" for t in vocab.tokens]
    text_matrix = np.array([vectorize(doc, vocab, text_mode) for _, doc in text_docs]) \
        if text_docs else np.empty((0, len(vocab)))
    tables.write_feature_csv(feat_dir / "text.csv", text_names,
                             [sid for sid, _ in text_docs], text_matrix)

    tables.write_split_csv(feat_dir / "splits.csv", split)
    (out / "warnings.txt").write_text(
        "\n".join(warnings) + ("\n" if warnings else ""), encoding="utf-8")
    _write_run_config(out, "extract", {
        "manifest": str(manifest_path), "seed": seed, "text_mode": text_mode,
        "stopwords": str(stopword_path) if stopword_path else None,
    })
    click.echo(f"extracted {len(audio_rows)} audio / {len(image_rows)} image / "
               f"{len(text_docs)} text rows, |V|={len(vocab)}, {len(warnings)} warnings")


def _load_stage(out: Path, modality: str):
    feat_dir = out / "features"
    ids, names, X = tables.read_feature_csv(feat_dir / f"{modality}.csv")
    split = tables.read_split_csv(feat_dir / "splits.csv")
    return ids, names, X, split


def _train_matrix(ids, X, split, records):
    train_ids = [i for i in ids if split.get(i) == "train"]
    index = {sid: k for k, sid in enumerate(ids)}
    Xtr = X[[index[i] for i in train_ids]]
    ytr = _labels_for(records, train_ids)
    return train_ids, Xtr, ytr


@cli.command("select")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--manifest", "manifest_path", required=True, type=click.Path(path_type=Path))
@click.option("--modality", type=click.Choice(MODALITIES), required=True)
@click.option("--select", "method", type=click.Choice(["rfe", "mrmr"]), required=True)
@click.option("--k", type=int, default=None, help="target feature count (default per modality)")
def cmd_select(out, manifest_path, modality, method, k):
    """Run feature selection on the train split and write a ranking report."""
    records = parse_manifest(manifest_path)
    ids, names, X, split = _load_stage(out, modality)
    _, Xtr, ytr = _train_matrix(ids, X, split, records)
    k = k if k is not None else _default_k(modality, X.shape[1])
    _, Ztr, _ = fs.standardize_fit_apply(Xtr)
    result = fs.rfe_select(Ztr, ytr, k) if method == "rfe" else fs.mrmr_select(Ztr, ytr, k)

    report_dir = out / "reports"
    report_dir.mkdir(exist_ok=True)
    lines = [f"# modality={modality} method={method} k={k}", "rank,feature_index,feature_name,action"]
    if method == "rfe":
        for rank, f in enumerate(result.order, start=1):
            lines.append(f"{rank},{f},{names[f]},eliminated")
        for f in result.kept:
            lines.append(f",{f},{names[f]},kept")
    else:
        for rank, f in enumerate(result.order, start=1):
            lines.append(f"{rank},{f},{names[f]},selected")
        for f in sorted(set(range(len(names))) - set(result.kept)):
            lines.append(f",{f},{names[f]},dropped")
    path = report_dir / f"selection_{modality}_{method}.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_run_config(out, "select", {"modality": modality, "method": method, "k": k,
                                      "manifest": str(manifest_path)})
    click.echo(f"kept {len(result.kept)} of {len(names)} features -> {path}")


def _default_k(modality: str, d: int) -> int:
    if modality == "audio":
        return min(29, d - 1)
    if modality == "image":
        return min(256, d - 1)
    return min(512, d - 1)


def _hp_from_options(algo, seed, learning_rate, iterations, l2, epochs,
                     k_neighbors, max_depth, ensemble_size) -> Hyperparams:
    kw = dict(algorithm=algo, seed=seed)
    if learning_rate is not None:
        kw["learning_rate"] = learning_rate
    if iterations is not None:
        kw["iterations"] = iterations
    if l2 is not None:
        kw["l2"] = l2
    if epochs is not None:
        kw["epochs"] = epochs
    if k_neighbors is not None:
        kw["k_neighbors"] = k_neighbors
    if max_depth is not None:
        kw["max_depth"] = max_depth
    if ensemble_size is not None:
        kw["ensemble_size"] = ensemble_size
    return Hyperparams(**kw)


def _frontend_for(modality: str, out: Path, text_mode: str | None, stop) -> dict:
    if modality == "audio":
        cfg = FrameConfig()
        return {"kind": "audio", "frame_length": cfg.frame_length,
                "hop_length": cfg.hop_length, "sample_rate": cfg.sample_rate}
    if modality == "image":
        return {"kind": "image"}
    vocab = read_vocabulary(out / "features" / "vocabulary.csv")
    return {
        "kind": "text",
        "mode": text_mode or "tfidf",
        "n_docs": vocab.n_docs,
        "vocabulary": {t: [vocab.index[t], vocab.doc_freq[t]] for t in vocab.tokens},
        "stopwords": sorted(stop),
    }


@cli.command("train")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--manifest", "manifest_path", required=True, type=click.Path(path_type=Path))
@click.option("--algo", type=click.Choice(ALGORITHM_TAGS), required=True)
@click.option("--modality", type=click.Choice(MODALITIES + ("all",)), default="all", show_default=True)
@click.option("--select", "method", type=click.Choice(["none", "rfe", "mrmr"]), default="none", show_default=True)
@click.option("--k", type=int, default=None)
@click.option("--seed", default=0, show_default=True)
@click.option("--learning-rate", type=float, default=None)
@click.option("--iterations", type=int, default=None)
@click.option("--l2", type=float, default=None)
@click.option("--epochs", type=int, default=None)
@click.option("--k-neighbors", type=int, default=None)
@click.option("--max-depth", type=int, default=None)
@click.option("--ensemble-size", type=int, default=None)
def cmd_train(out, manifest_path, algo, modality, method, k, seed, learning_rate,
              iterations, l2, epochs, k_neighbors, max_depth, ensemble_size):
    """Fit one algorithm per modality on the train split and save model files."""
    records = parse_manifest(manifest_path)
    hp = _hp_from_options(algo, seed, learning_rate, iterations, l2, epochs,
                          k_neighbors, max_depth, ensemble_size)
    # text featurization at predict time must match extraction
    run_cfg = out / "run_config.extract.json"
    text_mode = None
    stop = DEFAULT_STOPWORDS
    if run_cfg.exists():
        params = json.loads(run_cfg.read_text())["params"]
        text_mode = params.get("text_mode")
        if params.get("stopwords"):
            stop = load_stopwords(params["stopwords"])
    model_dir = out / "models"
    model_dir.mkdir(parents=True, exist_ok=True)

    todo = MODALITIES if modality == "all" else (modality,)
    for mod in todo:
        ids, names, X, split = _load_stage(out, mod)
        _, Xtr, ytr = _train_matrix(ids, X, split, records)
        select_k = k if k is not None else (_default_k(mod, X.shape[1]) if method != "none" else None)
        model = fit_pipeline(algo, Xtr, ytr, hp, select=method, k=select_k)
        model = dataclasses.replace(model, frontend=_frontend_for(mod, out, text_mode, stop))
        path = model_dir / f"{algo}_{mod}.json"
        save_model(model, path)
        click.echo(f"trained {algo} on {mod}: {Xtr.shape[0]} rows, {Xtr.shape[1]} features -> {path}")
    _write_run_config(out, "train", {
        "manifest": str(manifest_path), "algo": algo, "modality": modality,
        "select": method, "k": k, "hyperparams": dataclasses.asdict(hp),
    })


def _predictions_on_split(out, records, algo, which_split, model_paths=None):
    """Aligned per-modality predictions on one split; returns (ids, y, preds)."""
    per_mod = {}
    id_sets = []
    for mod in MODALITIES:
        path = (model_paths or {}).get(mod) or out / "models" / f"{algo}_{mod}.json"
        if not Path(path).exists():
            raise IncompleteResultsError(f"missing model file {path}")
        model = load_model(path)
        ids, _, X, split = _load_stage(out, mod)
        keep = [i for i, sid in enumerate(ids) if split.get(sid) == which_split]
        sids = [ids[i] for i in keep]
        per_mod[mod] = (dict(zip(sids, model_predict(model, X[keep]))), model.algorithm)
        id_sets.append(set(sids))
    common = sorted(set.intersection(*id_sets))
    if not common:
        raise TooFewSamplesError(f"no samples with all three modalities in the {which_split} split")
    preds = {mod: np.array([per_mod[mod][0][sid] for sid in common]) for mod in MODALITIES}
    y = _labels_for(records, common)
    algos = {per_mod[mod][1] for mod in MODALITIES}
    return common, y, preds, algos


@cli.command("evaluate")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--manifest", "manifest_path", required=True, type=click.Path(path_type=Path))
@click.option("--algo", type=click.Choice(ALGORITHM_TAGS), required=True)
@click.option("--image-model", type=click.Path(path_type=Path), default=None)
@click.option("--audio-model", type=click.Path(path_type=Path), default=None)
@click.option("--text-model", type=click.Path(path_type=Path), default=None)
@click.option("--mixed", is_flag=True, help="allow models trained with different algorithms")
def cmd_evaluate(out, manifest_path, algo, image_model, audio_model, text_model, mixed):
    """Score the three modality models plus the fused vote on the test split."""
    records = parse_manifest(manifest_path)
    model_paths = {"image": image_model, "audio": audio_model, "text": text_model}
    ids, y, preds, algos = _predictions_on_split(out, records, algo, "test", model_paths)
    if len(algos) > 1 and not mixed:
        raise UsageError(f"models trained with different algorithms {sorted(algos)}; pass --mixed to allow")

    fused = hard_vote(ModalityPredictions(image=preds["image"], audio=preds["audio"],
                                          text=preds["text"], ids=tuple(ids)))
    by_source = {mod: confusion(y, preds[mod]) for mod in MODALITIES}
    by_source["multi-modal"] = confusion(y, fused)
    report = build_report({algo: by_source})

    report_dir = out / "reports"
    report_dir.mkdir(parents=True, exist_ok=True)
    (report_dir / f"report_{algo}.csv").write_text(report.to_csv(), encoding="utf-8")
    (report_dir / f"report_{algo}.txt").write_text(report.to_text(), encoding="utf-8")
    _write_run_config(out, "evaluate", {
        "manifest": str(manifest_path), "algo": algo, "mixed": mixed,
        "test_samples": len(ids),
    })
    click.echo(report.to_text(), nl=False)


@cli.command("predict")
@click.option("--models", "model_dir", required=True, type=click.Path(path_type=Path))
@click.option("--algo", type=click.Choice(ALGORITHM_TAGS), required=True)
@click.option("--audio", "audio_path", required=True, type=click.Path(path_type=Path))
@click.option("--frames", "frame_dir", required=True, type=click.Path(path_type=Path))
@click.option("--text", "text_path", required=True, type=click.Path(path_type=Path))
def cmd_predict(model_dir, algo, audio_path, frame_dir, text_path):
    """Classify one raw sample and fuse the three modality decisions."""
    votes = {}
    for mod in MODALITIES:
        path = model_dir / f"{algo}_{mod}.json"
        if not path.exists():
            raise IncompleteResultsError(f"missing model file {path}")
        model = load_model(path)
        fe = model.frontend or {}
        if mod == "audio":
            cfg = FrameConfig(frame_length=fe.get("frame_length", 512),
                              hop_length=fe.get("hop_length", 256),
                              sample_rate=fe.get("sample_rate", 22050))
            vec = extract_audio_features(read_wav(audio_path), cfg)
        elif mod == "image":
            vec = extract_image_features(frame_dir)
        else:
            vocab = Vocabulary(
                index={t: v[0] for t, v in fe["vocabulary"].items()},
                doc_freq={t: v[1] for t, v in fe["vocabulary"].items()},
                n_docs=fe["n_docs"],
            )
            stop = frozenset(fe.get("stopwords", []))
            doc = normalize_and_tokenize(Path(text_path).read_text(encoding="utf-8"), stop)
            vec = vectorize(doc, vocab, fe.get("mode", "tfidf"))
        votes[mod] = int(model_predict(model, vec.reshape(1, -1))[0])

    fused = 1 if sum(votes.values()) >= 2 else 0
    for mod in MODALITIES:
        click.echo(f"{mod}: {'hate' if votes[mod] else 'nonhate'}")
    click.echo(f"fused: {'hate' if fused else 'nonhate'} (votes {sum(votes.values())}/3)")


@cli.command("report")
@click.option("--out", required=True, type=click.Path(path_type=Path))
def cmd_report(out):
    """Merge per-algorithm evaluation reports into one summary table."""
    report_dir = out / "reports"
    rows = []
    for algo in ALGORITHM_TAGS:
        path = report_dir / f"report_{algo}.csv"
        if path.exists():
            rows.extend(parse_report_csv(path.read_text(encoding="utf-8")).rows)
    if not rows:
        raise IncompleteResultsError(f"no report_<algo>.csv files under {report_dir}")
    from modhate.fusion_eval import EvaluationReport
    merged = EvaluationReport(rows=tuple(rows))
    (report_dir / "summary.csv").write_text(merged.to_csv(), encoding="utf-8")
    (report_dir / "summary.txt").write_text(merged.to_text(), encoding="utf-8")
    _write_run_config(out, "report", {"algorithms": sorted({r.algorithm for r in rows})})
    click.echo(merged.to_text(), nl=False)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return 1
    except click.ClickException as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except UsageError as e:
        click.echo(f"usage error: {e}", err=True)
        return 1
    except DataError as e:
        click.echo(f"data error: {e}", err=True)
        return 2
    except ModhateError as e:
        click.echo(f"internal error: {e}", err=True)
        return 3
    except Exception as e:  # noqa: BLE001 - last-resort exit-code mapping
        click.echo(f"internal error: {type(e).__name__}: {e}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
Burau熵估计工具 - 命令行入口
Burau 矩阵、谱半径扫描、单位根锐性检测、覆盖空间谱等价检验与约化数据预测

退出码：0 成功，2 用法错误，1 计算或一致性错误
"""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

# 添加项目根目录到Python路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from app.core.config import config, get_numeric_config
from app.core.errors import BraidSyntaxError, BurauToolkitError
from app.reporting import (
    ReportWriter,
    charpoly_payload,
    cover_payload,
    prediction_payload,
    scan_csv_text,
    scan_payload,
    sharpness_payload,
    to_json_text,
    unity_payload,
)
from app.schemas import BraidWord, OutputFormat, RunConfig
from app.services.analysis_runner import get_analyzer
from app.services.braid_core import exponent_sum, induced_permutation, permutation_cycles
from app.services.cover_oracle import verify_direct_sum
from app.services.laurent_algebra import burau_matrix, char_poly
from app.services.spectral import scan as run_scan
from app.services.spectral import scan_maxima, sharpness, unity_spectrum

# 创建Typer应用
app = typer.Typer(
    name="burau-entropy",
    help="🧮 Burau熵估计工具 - 辫子的 Burau 矩阵、谱半径扫描与锐性检测",
    add_completion=False,
)

# 创建Rich控制台
console = Console()
err_console = Console(stderr=True)
writer = ReportWriter(console)

numeric = get_numeric_config()


# ================================
# 错误处理
# ================================

def _fail(message: str, code: int):
    err_console.print(f"❌ {message}", style="bold red", markup=False)
    raise typer.Exit(code)


def _show_syntax_error(error: BraidSyntaxError, text: Optional[str]):
    err_console.print(f"❌ 语法错误: {error}", style="bold red", markup=False)
    if text is not None:
        line_start = text.rfind("\n", 0, error.position) + 1
        line_end = text.find("\n", error.position)
        line = text[line_start: line_end if line_end >= 0 else len(text)]
        err_console.print(f"   {line}", markup=False, highlight=False)
        err_console.print("   " + " " * (error.position - line_start) + "^", markup=False)
    raise typer.Exit(2)


@contextmanager
def _handle_errors(source_text: Optional[str] = None):
    """把库异常映射到退出码"""
    try:
        yield
    except typer.Exit:
        raise
    except BraidSyntaxError as e:
        _show_syntax_error(e, source_text)
    except BurauToolkitError as e:
        _fail(str(e), 2 if e.is_usage_error else 1)
    except ValidationError as e:
        _fail(f"参数校验失败: {e.errors()[0].get('msg', e)}", 2)
    except OSError as e:
        _fail(f"文件读写失败: {e}", 1)


def _run_config(ctx: typer.Context, subcommand: str, **kwargs) -> RunConfig:
    try:
        return RunConfig(subcommand=subcommand, **ctx.obj, **kwargs)
    except ValidationError as e:
        _fail(f"参数校验失败: {e.errors()[0].get('msg', e)}", 2)


def _load_word(cfg: RunConfig) -> BraidWord:
    """按 --word / --word-file 读取辫子词"""
    if cfg.n is None:
        _fail("需要用 --n 指定弦数", 2)
    if cfg.word_text is None and cfg.word_file is None:
        _fail("需要 --word 或 --word-file 之一", 2)

    parser = get_analyzer().file_parser
    if cfg.word_file is not None:
        try:
            text = cfg.word_file.read_text(encoding="utf-8")
        except OSError as e:
            _fail(f"无法读取辫子词文件: {e}", 2)
    else:
        text = cfg.word_text

    with _handle_errors(text):
        return parser.parse_word_text(text, cfg.n)


def _reject_csv(cfg: RunConfig):
    if cfg.fmt == OutputFormat.CSV:
        _fail(f"{cfg.subcommand} 的结果不是表格，CSV 只适用于 scan", 2)


def _emit_json(payload, cfg: RunConfig):
    writer.emit(to_json_text(payload), cfg.out, typer.echo)


def _version_callback(value: bool):
    if value:
        typer.echo(f"{config.app.app_name} v{config.app.app_version}")
        raise typer.Exit()


# ================================
# 全局选项
# ================================

@app.callback()
def main_options(
    ctx: typer.Context,
    n: Optional[int] = typer.Option(None, "--n", help="弦数 n"),
    word: Optional[str] = typer.Option(None, "--word", help="辫子词，例如 \"1 -2\" 或 \"b[1,3,3] b[4,3,3]^-1\""),
    word_file: Optional[Path] = typer.Option(None, "--word-file", help="辫子词文件"),
    fmt: OutputFormat = typer.Option(OutputFormat.PRETTY, "--format", help="输出格式"),
    version: bool = typer.Option(False, "--version", callback=_version_callback, is_eager=True, help="显示版本"),
):
    """🧮 Burau熵估计工具"""
    ctx.obj = {"n": n, "word_text": word, "word_file": word_file, "fmt": fmt}


# ================================
# 子命令
# ================================

@app.command()
def burau(
    ctx: typer.Context,
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
):
    """计算约化 Burau 矩阵 B(t)"""
    cfg = _run_config(ctx, "burau", out=out)
    _reject_csv(cfg)
    w = _load_word(cfg)

    with _handle_errors():
        M = burau_matrix(w)

        if cfg.fmt == OutputFormat.JSON:
            _emit_json(M.to_json(), cfg)
            return

        if cfg.out is not None:
            writer.emit(str(M) + "\n", cfg.out)
        console.print(writer.matrix_table(M, f"📐 B(t)，n = {w.strings}，{w.length} 个字母"))
        cycles = permutation_cycles(induced_permutation(w))
        console.print(f"🔢 指数和: {exponent_sum(w)}    置换: {cycles or '恒等'}")


@app.command()
def charpoly(
    ctx: typer.Context,
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
):
    """计算二元特征多项式 det(x·I − B(t))"""
    cfg = _run_config(ctx, "charpoly", out=out)
    _reject_csv(cfg)
    w = _load_word(cfg)

    with _handle_errors():
        chi = char_poly(burau_matrix(w))

        if cfg.fmt == OutputFormat.JSON:
            _emit_json(charpoly_payload(chi), cfg)
            return

        if cfg.out is not None:
            writer.emit(str(chi) + "\n", cfg.out)
        console.print(Panel(str(chi), title="χ(x, t)", border_style="blue"))


@app.command()
def scan(
    ctx: typer.Context,
    resolution: int = typer.Option(numeric.default_resolution, "--resolution", help="采样点数"),
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
    loci: bool = typer.Option(True, "--loci/--no-loci", help="是否输出特征值轨迹"),
):
    """扫描 r(θ) = ρ(B(e^{2πiθ}))，θ ∈ [0, 1)"""
    cfg = _run_config(ctx, "scan", resolution=resolution, out=out)
    w = _load_word(cfg)

    with _handle_errors():
        with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                      console=err_console, transient=True) as progress:
            task = progress.add_task("计算谱半径...", total=None)
            result = run_scan(w, cfg.resolution)
            progress.update(task, completed=True)

        if cfg.fmt == OutputFormat.CSV:
            writer.emit(scan_csv_text(result, loci), cfg.out, typer.echo)
        elif cfg.fmt == OutputFormat.JSON:
            _emit_json(scan_payload(result, loci), cfg)
        else:
            if cfg.out is not None:
                writer.emit(scan_csv_text(result, loci), cfg.out)
            peak = max(result.radii)
            console.print(f"📈 sup r(θ) ≈ {peak:.10f}")
            console.print(writer.scan_summary_table(result, scan_maxima(result, 1.0 + 1e-9)))


@app.command()
def unity(
    ctx: typer.Context,
    k: int = typer.Option(..., "--k", help="单位根次数 k"),
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
):
    """k 次单位根处 B(η_k^j) 的特征值"""
    cfg = _run_config(ctx, "unity", k=k, out=out)
    _reject_csv(cfg)
    w = _load_word(cfg)

    with _handle_errors():
        slots = unity_spectrum(w, cfg.k)
        if cfg.fmt == OutputFormat.JSON:
            _emit_json(unity_payload(slots), cfg)
        else:
            console.print(writer.unity_table(slots))


@app.command()
def sharp(
    ctx: typer.Context,
    lam: float = typer.Option(..., "--lambda", help="增长率 λ"),
    kmax: int = typer.Option(numeric.default_k_max, "--kmax", help="最大分母 k"),
    tol: float = typer.Option(numeric.sharp_tol, "--tol", help="绝对容差"),
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
):
    """锐性检测：列出 ρ(B(ω)) ≥ λ − tol 的单位根"""
    cfg = _run_config(ctx, "sharp", lam=lam, k_max=kmax, tol=tol, out=out)
    _reject_csv(cfg)
    w = _load_word(cfg)

    with _handle_errors():
        report = sharpness(w, cfg.lam, cfg.k_max, cfg.tol)
        if cfg.fmt == OutputFormat.JSON:
            _emit_json(sharpness_payload(report), cfg)
            return

        console.print(writer.sharpness_table(report))
        if report.minimal_k is None:
            console.print("⚠️ 在给定范围内 Burau 估计处处不锐", style="yellow")
        else:
            flag = "✅" if report.within_bound else "⚠️"
            console.print(f"{flag} 最小 k = {report.minimal_k}，⌊2n/3⌋ = {report.bound}")


@app.command("cover-check")
def cover_check(
    ctx: typer.Context,
    k: int = typer.Option(..., "--k", help="覆盖重数 k"),
    tol: float = typer.Option(numeric.cover_tol, "--tol", help="匹配容差"),
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
):
    """验证 k 重循环覆盖作用的谱等于 ⋃_j Spec(B(η_k^j))"""
    cfg = _run_config(ctx, "cover-check", k=k, tol=tol, out=out)
    _reject_csv(cfg)
    w = _load_word(cfg)

    with _handle_errors():
        verdict = verify_direct_sum(burau_matrix(w), cfg.k, cfg.tol)
        if cfg.fmt == OutputFormat.JSON:
            _emit_json(cover_payload(verdict), cfg)
        else:
            status = "[green]通过[/green]" if verdict.passed else "[red]失败[/red]"
            lines = [f"k = {verdict.k}，维数 = {verdict.dim}", f"最大匹配距离 = {verdict.max_match_distance:.3e}"]
            if verdict.cluster_distance is not None:
                lines.append(f"按簇距离 = {verdict.cluster_distance:.3e}")
            if verdict.charpoly_distance is not None:
                lines.append(f"特征多项式系数差 = {verdict.charpoly_distance:.3e}")
            console.print(Panel(
                "\n".join(lines) + f"\n结论: {status}",
                title="🧪 覆盖空间谱等价",
            ))

    if not verdict.passed:
        raise typer.Exit(1)


@app.command()
def predict(
    ctx: typer.Context,
    reduction: Path = typer.Option(..., "--reduction", help="约化数据 JSON 文件"),
    out: Optional[Path] = typer.Option(None, "--out", help="输出文件"),
):
    """由约化数据预测锐性单位根集合（先做 EPH 检查）"""
    cfg = _run_config(ctx, "predict", reduction=reduction, out=out)
    _reject_csv(cfg)
    analyzer = get_analyzer()

    with _handle_errors():
        rd = analyzer.file_parser.parse_reduction_file(cfg.reduction)
        prediction, bound, eph, orientability = analyzer.predict(rd)

        failed = [index for index, e in enumerate(eph) if not e.passed]
        if failed:
            details = "; ".join(f"2−2g = {eph[i].lhs:g} ≠ Σ(1−κ/2) = {eph[i].rhs:g}" for i in failed)
            _fail(f"约化数据不满足 Euler–Poincaré–Hopf: {details}", 1)

        if cfg.fmt == OutputFormat.JSON:
            _emit_json(prediction_payload(prediction, bound, eph, orientability), cfg)
            return

        table = Table(title="🔮 预测的锐性单位根")
        table.add_column("j/k", justify="right")
        table.add_column("θ", justify="right")
        for j, kk in prediction.fractions:
            table.add_row(f"{j}/{kk}", f"{j / kk:.6f}")
        console.print(table)
        if not prediction.fractions:
            console.print("⚠️ 指标集为空：Burau 估计在所有单位根处都不锐", style="yellow")
        else:
            console.print(
                f"🎯 最小 k = {bound.predicted_minimal_k}，⌊2n/3⌋ = {bound.bound}，"
                f"{'达到上界' if bound.attains else '未达到上界'}"
            )


@app.command()
def examples():
    """列出内置示例语料"""
    with _handle_errors():
        table = Table(title="📚 示例语料")
        table.add_column("名称", style="cyan", no_wrap=True)
        table.add_column("辫子", style="white")
        table.add_column("n", justify="right")
        table.add_column("λ", justify="right")
        table.add_column("k_max", justify="right")
        for example in get_analyzer().list_examples():
            table.add_row(example.name, example.title, str(example.strings),
                          f"{example.lam:.10g}", str(example.k_max))
        console.print(table)


@app.command()
def verify():
    """对示例语料做预测与数值结果的交叉检验"""
    console.print("🧪 交叉检验示例语料...", style="bold blue")
    analyzer = get_analyzer()

    with _handle_errors():
        corpus = analyzer.list_examples()
        results = []
        with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                      console=err_console, transient=True) as progress:
            task = progress.add_task("检验中...", total=len(corpus))
            for example in corpus:
                progress.update(task, description=f"检验 {example.name}...")
                results.append(analyzer.verify_example(example))
                progress.advance(task)

    table = Table(title="交叉检验结果")
    table.add_column("示例", style="cyan")
    table.add_column("预测", style="white")
    table.add_column("数值", style="white")
    table.add_column("最小 k", justify="right")
    table.add_column("EPH", justify="center")
    table.add_column("结论", justify="center")
    for r in results:
        table.add_row(
            r.name,
            " ".join(f"{j}/{k}" for j, k in r.predicted) or "∅",
            " ".join(f"{j}/{k}" for j, k in r.observed) or "∅",
            str(r.observed_minimal_k or "-"),
            "✅" if r.eph_passed else "❌",
            "[green]通过[/green]" if r.passed else "[red]失败[/red]",
        )
    console.print(table)

    failures = [r.name for r in results if not r.passed]
    if failures:
        _fail(f"{len(failures)} 个示例未通过: {', '.join(failures)}", 1)
    console.print("🎉 全部示例通过", style="bold green")


if __name__ == "__main__":
    app()

"""
Burau熵估计工具 - 统一配置管理
集中管理数值容差、扫描分辨率、示例语料路径与日志设置
"""

import os
from pathlib import Path
import logging

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

# 加载环境变量（仅影响日志级别，不影响任何数值结果）
load_dotenv()

# 项目根目录
PROJECT_ROOT = Path(__file__).parent.parent.parent


class NumericConfig:
    """数值计算配置（固定常量，保证相同输入得到逐字节相同的输出）"""

    def __init__(self):
        # 锐性检测：谱半径的绝对容差
        self.sharp_tol = 1e-6

        # 覆盖空间谱等价检验
        self.cover_tol = 1e-8
        # 亏损特征值的散布约为 (ε‖A‖)^{1/m}，Jordan 块越大需要的聚类半径越大
        self.cluster_radii = (1e-4, 1e-3, 1e-2, 1e-1)

        # 扫描
        self.default_resolution = 1024
        self.default_k_max = 16

        # 幂迭代交叉验证的迭代次数
        self.power_iterations = 2000

        # 输出格式
        self.significant_digits = 12
        self.csv_float_format = "%.12g"

        # 随机测试语料种子
        self.fuzz_seed = 20240


class AppConfig:
    """应用程序配置"""

    def __init__(self):
        self.app_name = "Burau Entropy Toolkit"
        self.app_version = "1.0.0"
        self.log_level = os.getenv("LOG_LEVEL", "WARNING")

        # 示例语料
        self.examples_dir = PROJECT_ROOT / "config" / "examples"
        self.corpus_manifest = self.examples_dir / "corpus.yaml"


class SystemConfig:
    """系统统一配置类"""

    def __init__(self):
        self.numeric = NumericConfig()
        self.app = AppConfig()

        # 配置日志
        self._setup_logging()

    def _setup_logging(self):
        """配置系统日志（输出到 stderr，保证 stdout 上的 CSV/JSON 干净）"""
        log_level = getattr(logging, self.app.log_level.upper(), logging.WARNING)

        logging.basicConfig(
            level=log_level,
            format="%(name)s - %(message)s",
            handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        )

    def print_config_summary(self, console: Console = None):
        """打印配置摘要"""
        console = console or Console()
        table = Table(title=f"⚙️  {self.app.app_name} v{self.app.app_version}")
        table.add_column("配置项", style="cyan")
        table.add_column("取值", style="white")

        table.add_row("📊 日志级别", self.app.log_level)
        table.add_row("🎯 锐性容差", f"{self.numeric.sharp_tol:g}")
        table.add_row("🧮 覆盖检验容差", f"{self.numeric.cover_tol:g}")
        table.add_row("🔗 特征值聚类半径", ", ".join(f"{r:g}" for r in self.numeric.cluster_radii))
        table.add_row("📈 默认扫描分辨率", str(self.numeric.default_resolution))
        table.add_row("🔢 有效数字", str(self.numeric.significant_digits))
        table.add_row("📁 示例语料", str(self.app.examples_dir))

        console.print(table)

    def validate_system(self) -> bool:
        """验证示例语料是否完整"""
        try:
            if not self.app.examples_dir.exists():
                raise FileNotFoundError(f"示例语料目录不存在: {self.app.examples_dir}")

            if not self.app.corpus_manifest.exists():
                raise FileNotFoundError(f"语料清单不存在: {self.app.corpus_manifest}")

            logging.getLogger(__name__).info("✅ 系统配置验证通过")
            return True

        except Exception as e:
            logging.getLogger(__name__).error(f"❌ 系统配置验证失败: {e}")
            return False


# 全局配置实例
config = SystemConfig()


def get_config() -> SystemConfig:
    """获取全局配置实例"""
    return config


def get_numeric_config() -> NumericConfig:
    """获取数值配置"""
    return config.numeric


def get_app_config() -> AppConfig:
    """获取应用配置"""
    return config.app


if __name__ == "__main__":
    config.print_config_summary()
    config.validate_system()

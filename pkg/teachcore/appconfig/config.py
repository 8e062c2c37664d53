from fractions import Fraction

from teachcore.configuration import ConfigValues
from teachcore.configuration.files import FileConfigValues


class LoggingSection(ConfigValues):
    # コンソールのログレベル (-v / -q で上書きされます)
    print_level = "info"
    file_level = "debug"
    # ログファイルのパス (未指定ならファイルに出力しません)
    log_file: str | None


class SearchSection(ConfigValues):
    # 部分集合探索で調べる状態数の上限
    max_states = 10_000_000
    # 調べる訓練集合の最大サイズ (未指定なら対象数)
    max_subset_size: int | None
    # プロトコル実行の最大ステップ数
    max_protocol_steps = 10000


class GeneratorSection(ConfigValues):
    # 乱数座標の範囲 ("p/q" または整数)
    low = Fraction(-4)
    high = Fraction(4)
    # 座標の刻み幅は 1/denominator (64 以下)
    denominator = 4


class VerifySection(ConfigValues):
    # ランダム問題の数 (分離可能 / 不十分 それぞれ)
    trials = 200
    # プロトコル検証 (P4, P5) に使う問題の数
    protocol_trials = 50
    max_dimension = 3
    max_pool_size = 12
    protocol_max_pool_size = 10
    # プロトコル検証に使う鎖状の束の深さ
    protocol_max_depth = 3
    # 1NN 増大族 (P6) の対の数
    explosion_sizes: list[int] = [2, 3, 4, 5]
    # 上界を等号で達成する構成 (P7, P9) の次元
    tightness_dimensions: list[int] = [1, 2, 3]
    # この対象数以下の問題は定義どおりの全探索とも照合する
    definitional_pool_limit = 8


class AppConfig(FileConfigValues):
    logging: LoggingSection
    search: SearchSection
    generator: GeneratorSection
    verify: VerifySection

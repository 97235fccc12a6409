"""lorasim の設定."""

# エラーメッセージの言語 ("ja" / "en")
ERROR_MESSAGE_LANGUAGE: str = "ja"

# 変調時のオーバーサンプル倍率（1 = クリティカルサンプリング）
DEFAULT_OVERSAMPLE: int = 1

# Monte Carlo 1 バッチあたりの複素サンプル数の上限
MONTE_CARLO_BATCH_SAMPLES: int = 1 << 21

# この SF 以上では Monte Carlo の既定忠実度を analytic にする
ANALYTIC_SF_THRESHOLD: int = 10

# シナリオ名省略時に使うシナリオ
DEFAULT_SCENARIO: str = "paper-urban-2024"

# sweep の "delivered?" 列を YES とみなす PDR
DELIVERED_PDR_THRESHOLD: float = 0.5

# 受入実験で使う 16 バイトの参照メッセージ
REFERENCE_MESSAGE: str = "HELLO LORA 0001!"

# テレメトリ接続先を与える環境変数
TELEMETRY_ENDPOINT_ENV: str = "TELEMETRY_ENDPOINT"
TELEMETRY_WRITE_KEY_ENV: str = "TELEMETRY_WRITE_KEY"

# テレメトリ HTTP リクエストのタイムアウト（秒）
TELEMETRY_TIMEOUT_S: float = 5.0

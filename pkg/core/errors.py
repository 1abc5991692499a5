#!/usr/bin/env python3
"""
TARKit 异常体系
所有库内错误都继承 TarError，CLI 映射为退出码 2，服务映射为 HTTP 400。
"""

from typing import Any, Dict, List, Optional


class TarError(Exception):
    """TARKit 错误基类"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "error": self.message,
            "type": type(self).__name__,
            "details": self.details,
        }


class GeometryDomainError(TarError):
    """零方向或零长度线段"""


class InvalidGraphError(TarError):
    """自环、重边或顶点编号越界"""


class InvalidDrawingError(TarError):
    """画法不满足有效性约束"""

    def __init__(self, message: str, violations: Optional[List[Any]] = None):
        violations = violations or []
        super().__init__(message, {"violations": [str(v) for v in violations]})
        self.violations = violations


class DisconnectedDrawingError(TarError):
    pass


class PreconditionError(TarError):
    pass


class DrawingFormatError(TarError):
    """画法文件格式错误"""


class CnfParseError(TarError):
    def __init__(self, message: str, line: Optional[int] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message if line is None else f"line {line}: {message}", {"line": line, **(details or {})})
        self.line = line


class UnsatisfyingAssignmentError(TarError):
    pass


class DecodeError(TarError):
    pass


class BudgetExceededError(TarError):
    pass


class RoutingError(TarError):
    """归约布局中路径无法放置"""


class ConfigurationError(TarError):
    pass


class WitnessMismatchError(TarError):
    """见证画法不是给定图的画法"""

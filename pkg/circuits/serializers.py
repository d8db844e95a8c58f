from rest_framework import serializers


class StatsSerializer(serializers.Serializer):
    width = serializers.IntegerField()
    gates = serializers.IntegerField()
    vtree_nodes = serializers.IntegerField()
    maxbag = serializers.IntegerField(required=False, allow_null=True)
    stage_widths = serializers.ListField(child=serializers.IntegerField(), required=False)
    wall_ms = serializers.FloatField(required=False)


def circuit_stats(circuit, **extra) -> dict:
    return {
        "width": circuit.width,
        "gates": len(circuit.gates),
        "vtree_nodes": len(circuit.vtree),
        **extra,
    }

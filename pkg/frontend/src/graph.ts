/**
 * Force-directed rendering of a view payload with d3.
 *
 * Layout positions are non-deterministic; everything observable in tests
 * is the render model: node/edge sets, colors, dashing, and the
 * inspection callout raised on click.
 */

import * as d3 from 'd3';

import type { ViewNode, ViewPayload } from './types';
import { KIND_DISPLAY_NAMES } from './types';

export interface RenderNode extends d3.SimulationNodeDatum {
  id: number;
  kind: string;
  label: string;
  qualifiedName: string;
  color: string;
  dashed: boolean;
}

export interface RenderEdge {
  source: number;
  target: number;
  kind: string;
}

export interface RenderModel {
  nodes: RenderNode[];
  edges: RenderEdge[];
}

/** Pure projection from an API payload to what the canvas will show. */
export function buildRenderModel(payload: ViewPayload): RenderModel {
  const colors = new Map(payload.legend.map((e) => [e.kind, e.color]));
  return {
    nodes: payload.nodes.map((n) => ({
      id: n.id,
      kind: n.kind,
      label: n.label,
      qualifiedName: n.qualified_name,
      color: colors.get(n.kind) ?? 'grey',
      dashed: n.is_external,
    })),
    edges: payload.edges.map((e) => ({ source: e.src, target: e.dst, kind: e.kind })),
  };
}

export function describeNode(node: Pick<ViewNode, 'kind' | 'qualified_name'>): string {
  const kind = KIND_DISPLAY_NAMES[node.kind] ?? node.kind;
  return `${kind}: ${node.qualified_name || '(repository root)'}`;
}

export interface GraphHandle {
  stop(): void;
}

export function renderGraph(
  container: HTMLElement,
  payload: ViewPayload,
  onSelect: (node: ViewNode) => void,
): GraphHandle {
  container.innerHTML = '';
  const model = buildRenderModel(payload);
  const byId = new Map(payload.nodes.map((n) => [n.id, n]));
  const width = container.clientWidth || 640;
  const height = container.clientHeight || 480;

  const svg = d3
    .select(container)
    .append('svg')
    .attr('viewBox', `0 0 ${width} ${height}`)
    .attr('width', '100%')
    .attr('height', '100%');
  const canvas = svg.append('g');

  svg.call(
    d3
      .zoom<SVGSVGElement, unknown>()
      .scaleExtent([0.2, 8])
      .on('zoom', (event) => canvas.attr('transform', event.transform)),
  );

  const simulation = d3
    .forceSimulation<RenderNode>(model.nodes)
    .force(
      'link',
      d3
        .forceLink<RenderNode, d3.SimulationLinkDatum<RenderNode>>(
          model.edges.map((e) => ({ source: e.source, target: e.target })),
        )
        .id((n) => n.id)
        .distance(60),
    )
    .force('charge', d3.forceManyBody().strength(-120))
    .force('center', d3.forceCenter(width / 2, height / 2));

  const links = canvas
    .selectAll('line')
    .data(model.edges)
    .join('line')
    .attr('class', 'edge')
    .attr('data-kind', (e) => e.kind)
    .attr('stroke', '#999');

  const nodes = canvas
    .selectAll<SVGCircleElement, RenderNode>('circle')
    .data(model.nodes)
    .join('circle')
    .attr('class', 'node')
    .attr('r', 8)
    .attr('data-id', (n) => n.id)
    .attr('data-kind', (n) => n.kind)
    .attr('fill', (n) => n.color)
    .attr('stroke', '#333')
    .attr('stroke-dasharray', (n) => (n.dashed ? '4 2' : null))
    .on('click', (_event, n) => {
      const original = byId.get(n.id);
      if (original) {
        onSelect(original);
      }
    });

  nodes.append('title').text((n) => n.qualifiedName);

  nodes.call(
    d3
      .drag<SVGCircleElement, RenderNode>()
      .on('start', (event, n) => {
        if (!event.active) simulation.alphaTarget(0.3).restart();
        n.fx = n.x;
        n.fy = n.y;
      })
      .on('drag', (event, n) => {
        n.fx = event.x;
        n.fy = event.y;
      })
      .on('end', (event, n) => {
        if (!event.active) simulation.alphaTarget(0);
        n.fx = null;
        n.fy = null;
      }),
  );

  const labels = canvas
    .selectAll('text')
    .data(model.nodes)
    .join('text')
    .attr('class', 'node-label')
    .attr('font-size', 10)
    .text((n) => n.label);

  simulation.on('tick', () => {
    const pos = new Map(model.nodes.map((n) => [n.id, n]));
    links
      .attr('x1', (e) => pos.get(e.source)?.x ?? 0)
      .attr('y1', (e) => pos.get(e.source)?.y ?? 0)
      .attr('x2', (e) => pos.get(e.target)?.x ?? 0)
      .attr('y2', (e) => pos.get(e.target)?.y ?? 0);
    nodes.attr('cx', (n) => n.x ?? 0).attr('cy', (n) => n.y ?? 0);
    labels.attr('x', (n) => (n.x ?? 0) + 10).attr('y', (n) => (n.y ?? 0) + 3);
  });

  return { stop: () => simulation.stop() };
}

(function(){"use strict";var S="___",E={click:"click",clicked:"click",mouseenter:"mouseenter",mouseleave:"mouseleave",contextmenu:"contextmenu"};function P(t){var f=t.split(S);if(f[0]==="init"&&f.length===3)return{init:true,prop:f[1],value:f[2]};if(f.length===4&&E[f[0]])return{init:false,event:E[f[0]],source:f[1],prop:f[2],value:f[3]};return null}function B(root){root=root||document;var st=root.__factgraph||(root.__factgraph={keys:{},count:0}),groups=root.querySelectorAll("g"),byName={},i,g;for(i=0;i<groups.length;i++){g=groups[i];var t=null;for(var c=g.firstElementChild;c;c=c.nextElementSibling)if(c.tagName.toLowerCase()==="title"){t=c.textContent.trim();break}if(t!==null&&!(t in byName))byName[t]=g;if(g.id&&!(g.id in byName))byName[g.id]=g}var events=[];for(i=0;i<groups.length;i++){g=groups[i];var cls=(g.getAttribute("class")||"").split(/\s+/);for(var j=0;j<cls.length;j++){if(cls[j].indexOf(S)<0)continue;var b=P(cls[j]);if(!b)continue;if(b.init)g.style.setProperty(b.prop,b.value);else events.push([g,b])}}for(i=0;i<events.length;i++){var target=events[i][0],e=events[i][1],src=byName[e.source];if(!src){if(typeof console!=="undefined")console.warn("factgraph: unknown element "+e.source);continue}var key=[e.source,e.event,target.id||i,e.prop,e.value].join(S);if(st.keys[key])continue;st.keys[key]=1;st.count++;(function(tg,ev){src.addEventListener(ev.event,function(x){if(ev.event==="contextmenu")x.preventDefault();tg.style.setProperty(ev.prop,ev.value)})})(target,e)}return st.count}if(typeof document!=="undefined")B(document);if(typeof window!=="undefined")window.factgraphBoot=B})();
